#include "jqc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "jqc/gates.hpp"
#include "jqc/schedule.hpp"
#include "jqc/transfer.hpp"

namespace jqc {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------- utilities

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dir_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

std::string join_path(const std::string& dir, const std::string& rel) {
  if (!rel.empty() && rel.front() == '/') return rel;
  return dir + "/" + rel;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

// "x.csv" -> "x<suffix>", anything else -> path + suffix.
std::string csv_sibling(const std::string& out, const std::string& suffix) {
  const std::string ext = ".csv";
  if (out.size() > ext.size() &&
      out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
    return out.substr(0, out.size() - ext.size()) + suffix;
  }
  return out + suffix;
}

// ------------------------------------------------------ config validation
// Hand-rolled mirror of the shipped JSON schemas: unknown keys are typos,
// missing keys and out-of-range values are reported with their path.

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& ctx) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || it.key() == a;
    if (!ok) throw std::invalid_argument(ctx + ": unknown key '" + it.key() + "'");
  }
}

const json& need(const json& j, const char* key, const std::string& ctx) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw std::invalid_argument(ctx + ": missing required key '" + key + "'");
  }
  return *it;
}

double need_num(const json& j, const char* key, const std::string& ctx) {
  const json& v = need(j, key, ctx);
  if (!v.is_number()) {
    throw std::invalid_argument(ctx + ": '" + key + "' must be a number");
  }
  return v.get<double>();
}

double opt_num(const json& j, const char* key, double fallback,
               const std::string& ctx) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) {
    throw std::invalid_argument(ctx + ": '" + key + "' must be a number");
  }
  return it->get<double>();
}

int opt_int(const json& j, const char* key, int fallback,
            const std::string& ctx) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) {
    throw std::invalid_argument(ctx + ": '" + key + "' must be an integer");
  }
  return it->get<int>();
}

std::string need_str(const json& j, const char* key, const std::string& ctx) {
  const json& v = need(j, key, ctx);
  if (!v.is_string()) {
    throw std::invalid_argument(ctx + ": '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::string opt_str(const json& j, const char* key, const std::string& fallback,
                    const std::string& ctx) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_string()) {
    throw std::invalid_argument(ctx + ": '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

// ------------------------------------------------------------- thresholds

struct Checks {
  std::vector<std::string> failures;

  void at_least(const std::string& name, double value, double bound) {
    if (!(value >= bound)) {
      failures.push_back(name + " = " + g17(value) + " < " + g17(bound));
    }
  }
  void at_most(const std::string& name, double value, double bound) {
    if (!(value <= bound)) {
      failures.push_back(name + " = " + g17(value) + " > " + g17(bound));
    }
  }
  void within(const std::string& name, double value, double target,
              double tol) {
    if (!(std::abs(value - target) <= tol)) {
      failures.push_back(name + " = " + g17(value) + " not within " +
                         g17(tol) + " of " + g17(target));
    }
  }
};

double bounded_threshold(const json& th, const char* key, double lo, double hi,
                         const std::string& ctx) {
  const double v = need_num(th, key, ctx);
  if (!(v >= lo && v <= hi)) {
    throw std::invalid_argument(ctx + ": '" + key + "' must lie in [" +
                                g17(lo) + ", " + g17(hi) + "]");
  }
  return v;
}

// --------------------------------------------------------- command results

struct CommandResult {
  json report;                            // body of the JSON output
  std::map<std::string, double> scalars;  // flat values, sweep columns
  std::string csv;                        // primary CSV payload, if any
  std::vector<std::string> failures;
};

// ----------------------------------------------------------- gate auditing

CommandResult run_gate_audit(const DeviceModel& d, json& params) {
  const std::string ctx = "gate_audit params";
  reject_unknown(params,
                 {"gate", "source", "target", "control", "beta_j", "thresholds"},
                 ctx);
  const std::string gate = need_str(params, "gate", ctx);

  GateReport rep;
  const auto nq = d.qubits.size();
  if (gate == "identity") {
    const Operator full(Matrix::Identity(hilbert_dim(d), hilbert_dim(d)));
    const auto keep = vacuum_block_indices(d);
    const Operator target(
        Matrix::Identity(static_cast<Eigen::Index>(keep.size()),
                         static_cast<Eigen::Index>(keep.size())));
    rep = audit_gate(full, target, keep, "identity");
  } else if (gate == "cz") {
    // Conditional phase run to E_c t = pi; locally equivalent to CZ, which
    // is what the Makhlin invariants certify.
    const double t = M_PI / d.capacitive_ec;
    Matrix cz = Matrix::Identity(4, 4);
    cz(3, 3) = -1.0;
    rep = audit_gate(conditional_phase(d, t), Operator(cz), {0, 1, 2, 3}, "cz");
  } else if (gate == "swap" || gate == "swap_literal") {
    const int source = opt_int(params, "source", 0, ctx);
    const int target = opt_int(params, "target", 1, ctx);
    if (source < 0 || target < 0 || source >= static_cast<int>(nq) ||
        target >= static_cast<int>(nq) || source == target) {
      throw std::invalid_argument(ctx + ": bad source/target qubit indices");
    }
    params["source"] = source;
    params["target"] = target;
    const auto j = static_cast<std::size_t>(target);  // receiver
    const auto k = static_cast<std::size_t>(source);  // sender
    const Operator u = gate == "swap" ? swap_qubit_qubit(d, j, k)
                                      : swap_qubit_qubit_literal(d, j, k);
    // State-transfer audit: worst case over a deterministic Bloch grid of
    // moving (alpha, beta) from the sender to the receiver, photon back in
    // vacuum.  Leakage is the worst population stranded outside the
    // photon-vacuum block.
    const Eigen::Index nph = d.cavity.n_ph;
    const Eigen::Index src = (Eigen::Index(1) << (nq - 1 - k)) * nph;
    const Eigen::Index dst = (Eigen::Index(1) << (nq - 1 - j)) * nph;
    const auto block = vacuum_block_indices(d);
    double worst = 1.0, worst_leak = 0.0;
    for (const auto& [al, be] : bloch_grid()) {
      Vector in = Vector::Zero(u.dim());
      in(0) = al;
      in(src) = be;
      Vector want = Vector::Zero(u.dim());
      want(0) = al;
      want(dst) = be;
      const Vector fin = u.mat * in;
      worst = std::min(worst, std::norm(want.dot(fin)));
      double inblock = 0.0;
      for (const auto idx : block) inblock += std::norm(fin(idx));
      worst_leak = std::max(worst_leak, 1.0 - inblock);
    }
    rep.target_name =
        gate == "swap" ? "state_transfer" : "state_transfer_literal";
    rep.fidelity = worst;
    rep.leakage = worst_leak;
  } else if (gate == "cnot_verified" || gate == "cnot_literal") {
    const int control = opt_int(params, "control", 0, ctx);
    const int target = opt_int(params, "target", 1, ctx);
    if (control < 0 || target < 0 || control >= static_cast<int>(nq) ||
        target >= static_cast<int>(nq) || control == target) {
      throw std::invalid_argument(ctx + ": bad control/target qubit indices");
    }
    params["control"] = control;
    params["target"] = target;
    const auto j = static_cast<std::size_t>(control);
    const auto k = static_cast<std::size_t>(target);
    if (gate == "cnot_verified") {
      rep = cnot_verified(d, j, k).report;
    } else {
      std::optional<double> beta_j;
      if (params.contains("beta_j")) beta_j = need_num(params, "beta_j", ctx);
      rep = cnot_composition(d, j, k, beta_j).report;
    }
  } else {
    throw std::invalid_argument(ctx + ": unknown gate '" + gate + "'");
  }

  CommandResult res;
  if (params.contains("thresholds")) {
    const json& th = params["thresholds"];
    reject_unknown(th,
                   {"min_fidelity", "max_leakage", "makhlin_g2", "makhlin_tol",
                    "max_makhlin_g1_abs"},
                   "gate_audit thresholds");
    Checks c;
    if (th.contains("min_fidelity")) {
      c.at_least("fidelity", rep.fidelity,
                 bounded_threshold(th, "min_fidelity", 0.0, 1.0, ctx));
    }
    if (th.contains("max_leakage")) {
      c.at_most("leakage", rep.leakage,
                bounded_threshold(th, "max_leakage", 0.0, 1.0, ctx));
    }
    if (th.contains("makhlin_g2")) {
      c.within("makhlin_g2", rep.makhlin_g2, need_num(th, "makhlin_g2", ctx),
               opt_num(th, "makhlin_tol", 1e-6, ctx));
    }
    if (th.contains("max_makhlin_g1_abs")) {
      c.at_most("|makhlin_g1|", std::abs(rep.makhlin_g1),
                bounded_threshold(th, "max_makhlin_g1_abs", 0.0, 16.0, ctx));
    }
    res.failures = std::move(c.failures);
  }

  res.report["gate"] = gate;
  res.report["report"] = report_to_json(rep);
  res.scalars = {{"fidelity", rep.fidelity},
                 {"infidelity", 1.0 - rep.fidelity},
                 {"leakage", rep.leakage},
                 {"makhlin_g1_re", rep.makhlin_g1.real()},
                 {"makhlin_g1_im", rep.makhlin_g1.imag()},
                 {"makhlin_g2", rep.makhlin_g2}};
  return res;
}

// -------------------------------------------------------------- schedules

ScheduleEngine engine_from_name(const std::string& s) {
  if (s == "product_exact") return ScheduleEngine::product_exact;
  if (s == "ode") return ScheduleEngine::ode;
  throw std::invalid_argument("unknown schedule engine '" + s + "'");
}

// The two-segment qubit-to-qubit transfer pulse: send the source qubit into
// the mode (Gamma t = 3pi/2), absorb on the target (pi/2).  The junction
// energy is tied to the coupling as E_J^0 = tie * g^2 * nu, so sweeping g
// also retunes the pulse.
Schedule swap_pulse_schedule(const DeviceModel& d, double tie, int source,
                             int target) {
  const auto nq = d.qubits.size();
  if (nq < 2) {
    throw std::invalid_argument("preset swap_pulse needs at least 2 qubits");
  }
  if (source == target || source < 0 || target < 0 ||
      source >= static_cast<int>(nq) || target >= static_cast<int>(nq)) {
    throw std::invalid_argument("preset swap_pulse: bad source/target");
  }
  const double g = d.cavity.g;
  if (g <= 0.0) {
    throw std::invalid_argument("preset swap_pulse needs cavity g > 0");
  }
  const double ej0 = tie * g * g * d.cavity.nu;
  const double rate = 0.5 * g * ej0;
  Schedule s;
  for (const auto& [who, angle] :
       {std::pair<int, double>{source, 1.5 * M_PI},
        std::pair<int, double>{target, 0.5 * M_PI}}) {
    const QubitParams& q = d.qubits[static_cast<std::size_t>(who)];
    if (q.e_j1 != q.e_j2) {
      throw std::invalid_argument(
          "preset swap_pulse needs symmetric junctions on the pulsed qubits");
    }
    PulseSegment seg;
    seg.duration = angle / rate;
    seg.settings.assign(nq, kParkedSetting);
    seg.settings[static_cast<std::size_t>(who)] = {
        q.n_bar, solve_flux_for_ej(ej0, q.e_j1)};
    s.segments.push_back(seg);
  }
  return s;
}

CommandResult run_schedule_cmd(const DeviceModel& d, json& params) {
  const std::string ctx = "schedule params";
  reject_unknown(params,
                 {"schedule", "preset", "tie", "source", "target", "engine",
                  "tol", "audit", "duration_scale", "thresholds"},
                 ctx);
  if (params.contains("schedule") == params.contains("preset")) {
    throw std::invalid_argument(
        ctx + ": give exactly one of 'schedule' or 'preset'");
  }

  const int source = opt_int(params, "source", 0, ctx);
  const int target = opt_int(params, "target", 1, ctx);
  Schedule s;
  std::string default_audit = "none";
  if (params.contains("preset")) {
    const std::string preset = need_str(params, "preset", ctx);
    if (preset != "swap_pulse") {
      throw std::invalid_argument(ctx + ": unknown preset '" + preset + "'");
    }
    const double tie = opt_num(params, "tie", 0.5, ctx);
    if (!(tie > 0.0)) {
      throw std::invalid_argument(ctx + ": 'tie' must be positive");
    }
    params["tie"] = tie;
    params["source"] = source;
    params["target"] = target;
    s = swap_pulse_schedule(d, tie, source, target);
    default_audit = "bloch_worst";
  } else {
    s = schedule_from_json(params["schedule"]);
  }

  const double scale = opt_num(params, "duration_scale", 1.0, ctx);
  if (!(scale > 0.0)) {
    throw std::invalid_argument(ctx + ": 'duration_scale' must be positive");
  }
  for (auto& seg : s.segments) seg.duration *= scale;

  const std::string engine = opt_str(params, "engine", "product_exact", ctx);
  const double tol = opt_num(params, "tol", 1e-10, ctx);
  if (!(tol > 0.0)) throw std::invalid_argument(ctx + ": 'tol' must be positive");
  const std::string audit = opt_str(params, "audit", default_audit, ctx);
  if (audit != "none" && audit != "bloch_worst") {
    throw std::invalid_argument(ctx + ": unknown audit '" + audit + "'");
  }
  params["engine"] = engine;
  params["tol"] = tol;
  params["audit"] = audit;

  const ScheduleResult res = run_schedule(d, s, engine_from_name(engine), tol);

  CommandResult out;
  out.report["engine"] = engine;
  out.report["norm_drift"] = res.diagnostics.norm_drift;
  out.report["segments"] = schedule_to_json(s)["segments"];
  json resid = json::array();
  for (const auto& r : res.diagnostics.residuals) {
    resid.push_back(
        {{"carrier", r.carrier}, {"blue", r.blue}, {"red", r.red}});
  }
  out.report["residuals"] = resid;
  out.scalars["norm_drift"] = res.diagnostics.norm_drift;

  if (res.final_state) {
    const double n = res.final_state->squaredNorm();
    out.report["final_norm_sq"] = n;
    out.scalars["final_norm_sq"] = n;
  }

  if (audit == "bloch_worst") {
    const auto nq = d.qubits.size();
    if (source == target || source < 0 || target < 0 ||
        source >= static_cast<int>(nq) || target >= static_cast<int>(nq)) {
      throw std::invalid_argument(ctx + ": bad source/target for audit");
    }
    params["source"] = source;
    params["target"] = target;
    const Eigen::Index nph = d.cavity.n_ph;
    const Eigen::Index src =
        (Eigen::Index(1) << (nq - 1 - static_cast<std::size_t>(source))) * nph;
    const Eigen::Index dst =
        (Eigen::Index(1) << (nq - 1 - static_cast<std::size_t>(target))) * nph;
    double worst = 1.0;
    for (const auto& [al, be] : bloch_grid()) {
      Vector in = Vector::Zero(res.propagator.dim());
      in(0) = al;
      in(src) = be;
      Vector want = Vector::Zero(res.propagator.dim());
      want(0) = al;
      want(dst) = be;
      worst = std::min(worst, std::norm(want.dot(res.propagator.mat * in)));
    }
    out.report["worst_fidelity"] = worst;
    out.scalars["worst_fidelity"] = worst;
    out.scalars["worst_infidelity"] = 1.0 - worst;
  }

  if (params.contains("thresholds")) {
    const json& th = params["thresholds"];
    reject_unknown(th, {"min_fidelity", "max_norm_drift"},
                   "schedule thresholds");
    Checks c;
    if (th.contains("min_fidelity")) {
      if (audit != "bloch_worst") {
        throw std::invalid_argument(
            ctx + ": 'min_fidelity' needs audit = bloch_worst");
      }
      c.at_least("worst_fidelity", out.scalars.at("worst_fidelity"),
                 bounded_threshold(th, "min_fidelity", 0.0, 1.0, ctx));
    }
    if (th.contains("max_norm_drift")) {
      c.at_most("norm_drift", res.diagnostics.norm_drift,
                need_num(th, "max_norm_drift", ctx));
    }
    out.failures = std::move(c.failures);
  }
  return out;
}

// ---------------------------------------------------------------- transfer

std::function<double(double)> sender_from_json(const json& js, double kappa,
                                               const std::string& ctx) {
  const std::string type = need_str(js, "type", ctx);
  if (type == "damped_ramp") {
    reject_unknown(js, {"type"}, ctx);
    // Critically damped emitter: exponential approach to kappa/2, flat after
    // t = 0.  Gamma1 <= kappa/2 keeps the sender from ringing, which is what
    // lets the non-negative receiver pulse absorb essentially everything.
    return [kappa](double t) {
      return t < 0.0 ? 0.5 * kappa * std::exp(0.25 * kappa * t) : 0.5 * kappa;
    };
  }
  if (type == "soft_on") {
    reject_unknown(js, {"type"}, ctx);
    // Emission switched on smoothly from zero at t = 0.
    return [kappa](double t) {
      return t <= 0.0 ? 0.0 : 0.5 * kappa * (1.0 - std::exp(-kappa * t));
    };
  }
  if (type == "constant") {
    reject_unknown(js, {"type", "rate"}, ctx);
    const double rate = opt_num(js, "rate", kappa, ctx);
    if (!(rate >= 0.0)) {
      throw std::invalid_argument(ctx + ": 'rate' must be nonnegative");
    }
    return [rate](double) { return rate; };
  }
  throw std::invalid_argument(ctx + ": unknown sender type '" + type + "'");
}

Complex complex_from_json(const json& v, const std::string& ctx) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    throw std::invalid_argument(ctx + ": complex values are [re, im] pairs");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

CommandResult run_transfer_cmd(json& params) {
  const std::string ctx = "transfer params";
  reject_unknown(params,
                 {"kappa", "g", "e_j0", "cascade_factor", "coupling_variant",
                  "window", "tol", "pulse_source", "n_samples", "initial",
                  "thresholds"},
                 ctx);

  TransferParams tp;
  tp.kappa = need_num(params, "kappa", ctx);
  tp.g = need_num(params, "g", ctx);
  tp.e_j0 = need_num(params, "e_j0", ctx);
  tp.cascade_factor = opt_num(params, "cascade_factor", 2.0, ctx);
  tp.coupling_variant =
      variant_from_name(opt_str(params, "coupling_variant", "cascaded", ctx));
  validate(tp);
  params["cascade_factor"] = tp.cascade_factor;
  params["coupling_variant"] = variant_name(tp.coupling_variant);

  const json& w = need(params, "window", ctx);
  if (!w.is_array() || w.size() != 2 || !w[0].is_number() ||
      !w[1].is_number()) {
    throw std::invalid_argument(ctx + ": 'window' must be [t_start, t_end]");
  }
  const double t0 = w[0].get<double>();
  const double t1 = w[1].get<double>();
  if (!(t1 > t0)) {
    throw std::invalid_argument(ctx + ": window needs t_end > t_start");
  }

  const double tol = opt_num(params, "tol", 1e-10, ctx);
  if (!(tol > 0.0)) throw std::invalid_argument(ctx + ": 'tol' must be positive");
  const int n_samples = opt_int(params, "n_samples", 481, ctx);
  params["tol"] = tol;
  params["n_samples"] = n_samples;

  const json& src = need(params, "pulse_source", ctx);
  const std::string type = need_str(src, "type", ctx + ".pulse_source");
  PulsePair pulses;
  if (type == "closed_form") {
    reject_unknown(src, {"type"}, ctx + ".pulse_source");
    pulses = closed_form_pulses(tp);
  } else if (type == "zero") {
    reject_unknown(src, {"type"}, ctx + ".pulse_source");
    pulses.gamma1_of_t = [](double) { return 0.0; };
    pulses.gamma2_of_t = [](double) { return 0.0; };
    pulses.t_start = t0;
    pulses.t_end = t1;
  } else if (type == "solved_no_reflection") {
    reject_unknown(src, {"type", "sender"}, ctx + ".pulse_source");
    const auto gamma1 = sender_from_json(need(src, "sender", ctx),
                                         tp.kappa, ctx + ".sender");
    pulses = solve_receiver_pulse(gamma1, tp, t0, t1);
  } else {
    throw std::invalid_argument(ctx + ": unknown pulse_source type '" + type +
                                "'");
  }

  TransferState init;
  init.alpha1 = 1.0;
  if (params.contains("initial")) {
    const json& ji = params["initial"];
    reject_unknown(ji, {"alpha1", "beta1", "alpha2", "beta2"},
                   ctx + ".initial");
    init.alpha1 = ji.contains("alpha1")
                      ? complex_from_json(ji["alpha1"], ctx)
                      : Complex(0.0, 0.0);
    if (ji.contains("beta1")) init.beta1 = complex_from_json(ji["beta1"], ctx);
    if (ji.contains("alpha2"))
      init.alpha2 = complex_from_json(ji["alpha2"], ctx);
    if (ji.contains("beta2")) init.beta2 = complex_from_json(ji["beta2"], ctx);
  }

  const TransferTrajectory tr =
      integrate_transfer(pulses, tp, init, t0, t1, tol, n_samples);

  CommandResult out;
  std::ostringstream csv;
  write_trajectory_csv(csv, tr);
  out.csv = csv.str();

  const TransferSummary& s = tr.summary;
  out.report["final_population"] = s.final_alpha2_sq;
  out.report["accumulated_loss"] = s.accumulated_loss;
  out.report["final_norm_sq"] = s.final_norm_sq;
  out.report["max_norm_sq"] = s.max_norm_sq;
  out.report["variant"] = variant_name(tp.coupling_variant);
  out.report["provenance"] = provenance_name(pulses.provenance);
  out.report["alpha2_floor_hit"] = pulses.alpha2_floor_hit;
  out.report["gamma2_cap_hit"] = pulses.gamma2_cap_hit;
  out.scalars = {{"final_population", s.final_alpha2_sq},
                 {"final_infidelity", 1.0 - s.final_alpha2_sq},
                 {"accumulated_loss", s.accumulated_loss},
                 {"final_norm_sq", s.final_norm_sq},
                 {"max_norm_sq", s.max_norm_sq}};

  if (params.contains("thresholds")) {
    const json& th = params["thresholds"];
    reject_unknown(th, {"min_final_population", "min_final_norm_sq"},
                   "transfer thresholds");
    Checks c;
    if (th.contains("min_final_population")) {
      c.at_least("final_population", s.final_alpha2_sq,
                 bounded_threshold(th, "min_final_population", 0.0, 1.0, ctx));
    }
    if (th.contains("min_final_norm_sq")) {
      c.at_least("final_norm_sq", s.final_norm_sq,
                 bounded_threshold(th, "min_final_norm_sq", 0.0, 1.0, ctx));
    }
    out.failures = std::move(c.failures);
  }
  return out;
}

// ---------------------------------------------------------------- spectrum

CommandResult run_spectrum_cmd(const DeviceModel& d, json& params) {
  const std::string ctx = "spectrum params";
  reject_unknown(params, {"hamiltonian", "qubit", "expect"}, ctx);
  const std::string which = need_str(params, "hamiltonian", ctx);

  Operator h;
  if (which == "h0") {
    h = build_h0(d);
  } else if (which == "exact") {
    h = build_h0(d) + build_hint_exact(d);
  } else if (which == "first_order") {
    h = build_h0(d) + build_hint_first_order(d);
  } else if (which == "rwa") {
    h = build_rwa_hamiltonian(d);
  } else if (which == "h_a") {
    const int q = opt_int(params, "qubit", 0, ctx);
    params["qubit"] = q;
    if (q < 0 || q >= static_cast<int>(d.qubits.size())) {
      throw std::invalid_argument(ctx + ": 'qubit' out of range");
    }
    h = build_rotating_ha_hb(d, static_cast<std::size_t>(q), 'a');
  } else {
    throw std::invalid_argument(ctx + ": unknown hamiltonian '" + which + "'");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("spectrum: eigensolver failed");
  }
  const Eigen::VectorXd evs = es.eigenvalues();  // ascending

  CommandResult out;
  std::string csv = "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < evs.size(); ++i) {
    csv += std::to_string(i) + "," + g17(evs(i)) + "\n";
  }
  out.csv = std::move(csv);
  out.report["hamiltonian"] = which;
  out.report["dim"] = evs.size();
  out.report["min_eigenvalue"] = evs(0);
  out.report["max_eigenvalue"] = evs(evs.size() - 1);
  out.scalars = {{"dim", static_cast<double>(evs.size())},
                 {"min_eigenvalue", evs(0)},
                 {"max_eigenvalue", evs(evs.size() - 1)}};

  if (params.contains("expect")) {
    const json& ex = params["expect"];
    reject_unknown(ex, {"min_eigenvalue", "max_eigenvalue"}, "spectrum expect");
    Checks c;
    if (ex.contains("min_eigenvalue")) {
      c.at_least("min_eigenvalue", evs(0),
                 need_num(ex, "min_eigenvalue", ctx));
    }
    if (ex.contains("max_eigenvalue")) {
      c.at_most("max_eigenvalue", evs(evs.size() - 1),
                need_num(ex, "max_eigenvalue", ctx));
    }
    out.failures = std::move(c.failures);
  }
  return out;
}

// ------------------------------------------------------------ scenarios

struct Scenario {
  std::string kind;
  std::optional<DeviceModel> device;
  json device_json;  // inlined on parse so resolved configs are portable
  json params;
  std::string output_path;
};

bool kind_needs_device(const std::string& kind) {
  return kind == "gate_audit" || kind == "schedule" || kind == "spectrum";
}

Scenario parse_scenario(const json& cfg, const std::string& config_dir,
                        bool nested) {
  const std::string ctx = nested ? "sweep scenario" : "config";
  if (!cfg.is_object()) {
    throw std::invalid_argument(ctx + ": must be a JSON object");
  }
  reject_unknown(cfg, {"kind", "device", "device_path", "params", "output_path"},
                 ctx);
  Scenario sc;
  sc.kind = need_str(cfg, "kind", ctx);
  if (sc.kind != "gate_audit" && sc.kind != "schedule" &&
      sc.kind != "transfer" && sc.kind != "sweep" && sc.kind != "spectrum") {
    throw std::invalid_argument(ctx + ": unknown kind '" + sc.kind + "'");
  }
  if (nested && sc.kind == "sweep") {
    throw std::invalid_argument("sweep scenarios cannot nest");
  }
  if (nested && cfg.contains("output_path")) {
    throw std::invalid_argument("sweep scenario: 'output_path' not allowed");
  }

  if (kind_needs_device(sc.kind)) {
    if (cfg.contains("device") == cfg.contains("device_path")) {
      throw std::invalid_argument(
          ctx + ": give exactly one of 'device' or 'device_path'");
    }
    sc.device_json = cfg.contains("device")
                         ? cfg["device"]
                         : load_json_file(join_path(
                               config_dir, need_str(cfg, "device_path", ctx)));
    sc.device = device_from_json(sc.device_json);
  } else if (cfg.contains("device") || cfg.contains("device_path")) {
    throw std::invalid_argument(ctx + ": kind '" + sc.kind +
                                "' does not take a device");
  }

  sc.params = cfg.value("params", json::object());
  if (!sc.params.is_object()) {
    throw std::invalid_argument(ctx + ": 'params' must be an object");
  }
  sc.output_path = opt_str(cfg, "output_path", "", ctx);
  return sc;
}

json resolved_config_json(const Scenario& sc) {
  json j;
  j["kind"] = sc.kind;
  if (!sc.device_json.is_null()) j["device"] = sc.device_json;
  j["params"] = sc.params;
  if (!sc.output_path.empty()) j["output_path"] = sc.output_path;
  return j;
}

CommandResult dispatch_simple(Scenario& sc) {
  if (sc.kind == "gate_audit") return run_gate_audit(*sc.device, sc.params);
  if (sc.kind == "schedule") return run_schedule_cmd(*sc.device, sc.params);
  if (sc.kind == "transfer") return run_transfer_cmd(sc.params);
  if (sc.kind == "spectrum") return run_spectrum_cmd(*sc.device, sc.params);
  throw std::invalid_argument("unexpected kind '" + sc.kind + "'");
}

// ------------------------------------------------------------------ sweep

void apply_axis(Scenario& sc, const std::string& axis, double value) {
  if (axis == "duration") {
    if (sc.kind != "schedule") {
      throw std::invalid_argument("axis 'duration' needs a schedule scenario");
    }
    sc.params["duration_scale"] = value;
    return;
  }
  if (sc.kind == "transfer") {
    if (axis == "g") {
      sc.params["g"] = value;
    } else if (axis == "kappa") {
      sc.params["kappa"] = value;
    } else {
      throw std::invalid_argument("axis '" + axis +
                                  "' does not apply to transfer scenarios");
    }
    return;
  }
  json& dev = sc.device_json;
  if (axis == "g") {
    dev["cavity"]["g"] = value;
  } else if (axis == "kappa") {
    dev["cavity"]["kappa"] = value;
  } else if (axis == "e_c") {
    dev["capacitive_ec"] = value;
  } else if (axis == "n_ph") {
    if (std::floor(value) != value || value < 1.0) {
      throw std::invalid_argument("axis 'n_ph' needs integer grid values");
    }
    dev["cavity"]["n_ph"] = static_cast<int>(value);
  } else {
    throw std::invalid_argument("unknown sweep axis '" + axis + "'");
  }
  sc.device = device_from_json(dev);
}

CommandResult run_sweep(json& params, const std::string& config_dir) {
  const std::string ctx = "sweep params";
  reject_unknown(params, {"axis", "grid", "scenario"}, ctx);
  const std::string axis = need_str(params, "axis", ctx);
  if (axis != "g" && axis != "kappa" && axis != "e_c" && axis != "duration" &&
      axis != "n_ph") {
    throw std::invalid_argument("unknown sweep axis '" + axis + "'");
  }
  const json& grid = need(params, "grid", ctx);
  if (!grid.is_array() || grid.empty()) {
    throw std::invalid_argument(ctx + ": 'grid' must be a non-empty array");
  }
  std::vector<double> values;
  for (const auto& v : grid) {
    if (!v.is_number()) {
      throw std::invalid_argument(ctx + ": grid values must be numbers");
    }
    values.push_back(v.get<double>());
  }

  const Scenario base =
      parse_scenario(need(params, "scenario", ctx), config_dir, true);

  CommandResult out;
  std::vector<std::map<std::string, double>> rows;
  for (const double v : values) {
    Scenario point = base;
    apply_axis(point, axis, v);
    CommandResult r = dispatch_simple(point);
    for (const auto& f : r.failures) {
      out.failures.push_back(axis + " = " + g17(v) + ": " + f);
    }
    if (!rows.empty() &&
        r.scalars.size() != rows.front().size()) {
      throw std::runtime_error("sweep: inconsistent outputs across points");
    }
    rows.push_back(std::move(r.scalars));
  }

  std::string csv = axis;
  for (const auto& kv : rows.front()) csv += "," + kv.first;
  csv += "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv += g17(values[i]);
    for (const auto& kv : rows[i]) csv += "," + g17(kv.second);
    csv += "\n";
  }
  out.csv = std::move(csv);

  // The meta file records the nested scenario with its device inlined, so
  // axis + grid + scenario replay the sweep with no other files around.
  params["scenario"] = resolved_config_json(base);
  out.report["points"] = rows.size();
  return out;
}

// ------------------------------------------------------------- CLI driver

const char kUsage[] =
    "usage: sim <command> --config <path> [--out <path>] [--tol <x>]\n"
    "commands:\n"
    "  gate-audit  audit a closed-form gate against its target\n"
    "  schedule    run a pulse schedule and audit the result\n"
    "  transfer    integrate a cavity-to-cavity transfer scenario\n"
    "  sweep       run a scenario over an explicit parameter grid\n"
    "  spectrum    eigenvalues of a device Hamiltonian\n"
    "exit codes: 0 pass, 1 numeric/threshold failure, 2 invalid input\n";

std::string kind_for_command(const std::string& cmd) {
  if (cmd == "gate-audit") return "gate_audit";
  if (cmd == "schedule" || cmd == "transfer" || cmd == "sweep" ||
      cmd == "spectrum") {
    return cmd;
  }
  throw std::invalid_argument("unknown command '" + cmd + "'");
}

std::string default_output(const std::string& kind) {
  if (kind == "gate_audit") return "gate_audit.json";
  if (kind == "schedule") return "schedule_report.json";
  if (kind == "transfer") return "transfer.csv";
  if (kind == "sweep") return "sweep.csv";
  return "spectrum.csv";
}

int run_cli_impl(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  if (args.empty()) {
    err << kUsage;
    return 2;
  }
  if (args[0] == "--help" || args[0] == "help") {
    out << kUsage;
    return 0;
  }
  const std::string kind = kind_for_command(args[0]);

  std::string config_path, out_path;
  std::optional<double> tol;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto next = [&]() -> const std::string& {
      if (++i >= args.size()) {
        throw std::invalid_argument("missing value after " + a);
      }
      return args[i];
    };
    if (a == "--config") {
      config_path = next();
    } else if (a == "--out") {
      out_path = next();
    } else if (a == "--tol") {
      std::size_t used = 0;
      const std::string& v = next();
      const double x = std::stod(v, &used);
      if (used != v.size() || !(x > 0.0)) {
        throw std::invalid_argument("--tol needs a positive number");
      }
      tol = x;
    } else {
      throw std::invalid_argument("unknown argument '" + a + "'");
    }
  }
  if (config_path.empty()) {
    throw std::invalid_argument("--config is required");
  }

  const json cfg = load_json_file(config_path);
  Scenario sc = parse_scenario(cfg, dir_of(config_path), false);
  if (sc.kind != kind) {
    throw std::invalid_argument("config kind '" + sc.kind +
                                "' does not match command '" + args[0] + "'");
  }
  if (!out_path.empty()) sc.output_path = out_path;
  if (sc.output_path.empty()) sc.output_path = default_output(kind);
  if (tol) {
    if (kind == "sweep") {
      sc.params["scenario"]["params"]["tol"] = *tol;
    } else {
      sc.params["tol"] = *tol;
    }
  }

  CommandResult res = kind == "sweep"
                          ? run_sweep(sc.params, dir_of(config_path))
                          : dispatch_simple(sc);

  // Outputs: JSON-report commands embed the resolved config; CSV commands
  // get it as a sibling metadata file.
  json meta = resolved_config_json(sc);
  if (!res.csv.empty()) {
    write_text_file(sc.output_path, res.csv);
    json side = res.report;
    side["resolved_config"] = meta;
    side["passed"] = res.failures.empty();
    side["failures"] = res.failures;
    const std::string suffix =
        sc.kind == "transfer" ? ".summary.json" : ".meta.json";
    write_text_file(csv_sibling(sc.output_path, suffix),
                    side.dump(2) + "\n");
    out << args[0] << ": wrote " << sc.output_path << "\n";
  } else {
    json body = res.report;
    body["resolved_config"] = meta;
    body["passed"] = res.failures.empty();
    body["failures"] = res.failures;
    write_text_file(sc.output_path, body.dump(2) + "\n");
    out << args[0] << ": wrote " << sc.output_path << "\n";
  }
  for (const auto& [key, val] : res.scalars) {
    out << "  " << key << " = " << g17(val) << "\n";
  }

  if (!res.failures.empty()) {
    for (const auto& f : res.failures) err << "failed: " << f << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  try {
    return run_cli_impl(args, out, err);
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace jqc
