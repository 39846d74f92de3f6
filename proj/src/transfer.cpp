#include "jqc/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "jqc/ode.hpp"

namespace jqc {

namespace {

double eval_rate(const std::function<double(double)>& gamma, double t,
                 const char* which) {
  if (!gamma) {
    throw std::invalid_argument(std::string(which) + " is not set");
  }
  const double v = gamma(t);
  if (v < 0.0) {
    throw std::domain_error(std::string(which) +
                            " is negative at t = " + std::to_string(t));
  }
  return v;
}

std::string format_t(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  return buf;
}

}  // namespace

const char* variant_name(CouplingVariant v) {
  return v == CouplingVariant::cascaded ? "cascaded" : "literal_paper";
}

CouplingVariant variant_from_name(const std::string& s) {
  if (s == "cascaded") return CouplingVariant::cascaded;
  if (s == "literal_paper") return CouplingVariant::literal_paper;
  throw std::invalid_argument("unknown coupling variant: " + s);
}

const char* provenance_name(PulseProvenance p) {
  switch (p) {
    case PulseProvenance::closed_form:
      return "closed_form";
    case PulseProvenance::solved_no_reflection:
      return "solved_no_reflection";
    case PulseProvenance::user_supplied:
      return "user_supplied";
  }
  throw std::invalid_argument("unknown provenance");
}

void validate(const TransferParams& p) {
  if (!(p.kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
  if (!(p.g > 0.0)) throw std::invalid_argument("g must be > 0");
  if (!(p.e_j0 > 0.0)) throw std::invalid_argument("e_j0 must be > 0");
  if (!(p.cascade_factor >= 0.0)) {
    throw std::invalid_argument("cascade_factor must be >= 0");
  }
}

double TransferState::norm_sq() const {
  return std::norm(alpha1) + std::norm(beta1) + std::norm(alpha2) +
         std::norm(beta2);
}

TransferState ode_rhs(const TransferState& state, const PulsePair& pulses,
                      const TransferParams& params) {
  validate(params);
  const double g1 = eval_rate(pulses.gamma1_of_t, state.t, "gamma1");
  const double g2 = eval_rate(pulses.gamma2_of_t, state.t, "gamma2");
  const double k = params.kappa;

  TransferState d;
  d.t = state.t;
  d.alpha1 = g1 * state.beta1;
  d.alpha2 = g2 * state.beta2;
  d.beta1 = -g1 * state.alpha1 - k * state.beta1;
  if (params.coupling_variant == CouplingVariant::literal_paper) {
    // As printed: both photon amplitudes damp through beta1 only.
    d.beta2 = -g2 * state.alpha2 - k * state.beta1;
  } else {
    d.beta2 = -g2 * state.alpha2 - k * state.beta2 -
              params.cascade_factor * k * state.beta1;
  }
  return d;
}

double closed_form_alpha2(double kappa, double t) {
  if (t < 0.0) return 0.0;
  const double kt = kappa * t;
  const double bracket =
      1.0 + std::cos(std::sqrt(3.0) * kt - M_PI / 6.0) / std::sqrt(3.0);
  return std::sqrt(1.0 - std::exp(-kt) * bracket / 2.0);
}

PulsePair closed_form_pulses(const TransferParams& params) {
  validate(params);
  const double k = params.kappa;
  const double scale = params.g * params.e_j0;
  const double ratio = k / scale;
  if (ratio > 2.0) {
    throw std::invalid_argument(
        "closed_form_pulses: kappa/(g e_j0) must be <= 2");
  }

  PulsePair p;
  p.provenance = PulseProvenance::closed_form;
  p.t_start = 0.0;
  p.t_end = 12.0 / k;
  // Flux parameterization: Gamma = g E_J^0(phi)/2 = g e_j0 * (arccos
  // argument), so the rate is the argument itself scaled back --- the
  // arccos/cos pair cancels algebraically and only the domain check remains.
  p.gamma1_of_t = [ratio, scale](double t) {
    if (ratio > 1.0) {
      throw std::domain_error(
          "closed-form sender: arccos argument " + std::to_string(ratio) +
          " out of [-1, 1] at t = " + format_t(t));
    }
    return scale * ratio;  // == kappa
  };
  p.gamma2_of_t = [k, scale](double t) {
    if (t < 0.0) return 0.0;
    const double kt = k * t;
    const double x = k * std::exp(-kt / 2.0) *
                     std::cos(std::sqrt(3.0) * kt / 2.0 - M_PI / 3.0) /
                     (scale * closed_form_alpha2(k, t));
    if (std::abs(x) > 1.0) {
      throw std::domain_error(
          "closed-form receiver: arccos argument " + std::to_string(x) +
          " out of [-1, 1] at t = " + format_t(t));
    }
    // The printed rate goes negative once the cosine does; the flux
    // parameterization stops at zero rate instead.
    return std::max(0.0, scale * x);
  };
  return p;
}

PulsePair mirrored_closed_form_pulses(const TransferParams& params) {
  PulsePair base = closed_form_pulses(params);
  PulsePair p;
  p.provenance = PulseProvenance::closed_form;
  p.t_start = -12.0 / params.kappa;
  p.t_end = 12.0 / params.kappa;
  p.gamma2_of_t = base.gamma2_of_t;
  p.gamma1_of_t = [g2 = base.gamma2_of_t](double t) { return g2(-t); };
  return p;
}

PulsePair solve_receiver_pulse(const std::function<double(double)>& gamma1,
                               const TransferParams& params, double t_start,
                               double t_end, const SolverOptions& opts) {
  validate(params);
  if (params.coupling_variant != CouplingVariant::cascaded) {
    throw std::invalid_argument(
        "solve_receiver_pulse: cascaded variant required");
  }
  if (!(t_end > t_start)) {
    throw std::invalid_argument("solve_receiver_pulse: empty window");
  }
  if (opts.n_grid < 2) {
    throw std::invalid_argument("solve_receiver_pulse: n_grid < 2");
  }
  const double k = params.kappa;
  const double c = params.cascade_factor;
  const double cap = opts.gamma2_cap_kappas * k;
  const double h = (t_end - t_start) / opts.n_grid;

  bool floor_hit = false;
  bool cap_hit = false;

  // No-reflection constraint beta2 = -beta1: the receiver must cancel the
  // sender's emission, Gamma2 alpha2 = -(Gamma1 alpha1 + c kappa beta1).
  // `floored` reports a division that needed the alpha2 floor while the
  // numerator was live.
  auto rate_at = [&](double g1, double a1, double b1, double a2,
                     bool* floored) {
    const double num = g1 * a1 + c * k * b1;
    double a2_used = a2;
    if (std::abs(a2) < opts.alpha2_floor) {
      a2_used = a2 < 0.0 ? -opts.alpha2_floor : opts.alpha2_floor;
      if (std::abs(num) > 1e-12 * k) {
        floor_hit = true;
        if (floored) *floored = true;
      }
    }
    double g2 = -num / a2_used;
    if (g2 < 0.0) g2 = 0.0;
    if (g2 > cap) {
      g2 = cap;
      cap_hit = true;
    }
    return g2;
  };

  // Constrained sender + receiver-occupation system: alpha1' = G1 b1,
  // beta1' = -G1 a1 - k b1, alpha2' = -G2 b1 (beta2 = -beta1).
  auto deriv = [&](double t, const double y[3], double dy[3]) {
    const double g1 = eval_rate(gamma1, t, "gamma1");
    const double g2 = rate_at(g1, y[0], y[1], y[2], nullptr);
    dy[0] = g1 * y[1];
    dy[1] = -g1 * y[0] - k * y[1];
    dy[2] = -g2 * y[1];
  };

  std::vector<double> nodes(static_cast<std::size_t>(opts.n_grid) + 1);
  double y[3] = {1.0, 0.0, 0.0};
  double longest_floor_span = 0.0;
  double current_floor_span = 0.0;

  for (int i = 0; i <= opts.n_grid; ++i) {
    const double t = t_start + h * i;
    const double g1 = eval_rate(gamma1, t, "gamma1");
    bool floored_now = false;
    nodes[static_cast<std::size_t>(i)] =
        rate_at(g1, y[0], y[1], y[2], &floored_now);
    if (floored_now) {
      current_floor_span += h;
      longest_floor_span = std::max(longest_floor_span, current_floor_span);
    } else {
      current_floor_span = 0.0;
    }

    if (i == opts.n_grid) break;
    // Classic RK4 step.
    double k1[3], k2[3], k3[3], k4[3], ytmp[3];
    deriv(t, y, k1);
    for (int j = 0; j < 3; ++j) ytmp[j] = y[j] + 0.5 * h * k1[j];
    deriv(t + 0.5 * h, ytmp, k2);
    for (int j = 0; j < 3; ++j) ytmp[j] = y[j] + 0.5 * h * k2[j];
    deriv(t + 0.5 * h, ytmp, k3);
    for (int j = 0; j < 3; ++j) ytmp[j] = y[j] + h * k3[j];
    deriv(t + h, ytmp, k4);
    for (int j = 0; j < 3; ++j) {
      y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
  }

  if (longest_floor_span > opts.max_floor_fraction * (t_end - t_start)) {
    throw std::runtime_error(
        "solve_receiver_pulse: no-reflection constraint unsolvable, alpha2 "
        "stayed below the division floor for " +
        format_t(longest_floor_span) + " time units");
  }

  PulsePair p;
  p.provenance = PulseProvenance::solved_no_reflection;
  p.t_start = t_start;
  p.t_end = t_end;
  p.alpha2_floor_hit = floor_hit;
  p.gamma2_cap_hit = cap_hit;
  p.gamma1_of_t = gamma1;
  // Piecewise-linear table over the solve grid; off outside the window.
  p.gamma2_of_t = [nodes = std::move(nodes), t_start, t_end,
                   h](double t) -> double {
    if (t < t_start || t > t_end) return 0.0;
    const double s = (t - t_start) / h;
    const auto i = static_cast<std::size_t>(
        std::min<double>(std::floor(s), static_cast<double>(nodes.size() - 2)));
    const double w = s - static_cast<double>(i);
    return (1.0 - w) * nodes[i] + w * nodes[i + 1];
  };
  return p;
}

TransferTrajectory integrate_transfer(const PulsePair& pulses,
                                      const TransferParams& params,
                                      const TransferState& initial,
                                      double t_start, double t_end, double tol,
                                      int n_samples) {
  validate(params);
  if (!(t_end > t_start)) {
    throw std::invalid_argument("integrate_transfer: t_end must exceed t_start");
  }
  if (n_samples < 2) {
    throw std::invalid_argument("integrate_transfer: n_samples < 2");
  }
  if (initial.norm_sq() > 1.0 + 1e-9) {
    throw std::invalid_argument(
        "integrate_transfer: initial norm exceeds 1");
  }

  auto rhs = [&](double t, const Matrix& y) -> Matrix {
    TransferState s;
    s.alpha1 = y(0, 0);
    s.beta1 = y(1, 0);
    s.alpha2 = y(2, 0);
    s.beta2 = y(3, 0);
    s.t = t;
    const TransferState d = ode_rhs(s, pulses, params);
    Matrix out(4, 1);
    out(0, 0) = d.alpha1;
    out(1, 0) = d.beta1;
    out(2, 0) = d.alpha2;
    out(3, 0) = d.beta2;
    return out;
  };

  OdeOptions opts;
  opts.tol = tol;

  TransferTrajectory tr;
  tr.samples.reserve(static_cast<std::size_t>(n_samples));
  Matrix y(4, 1);
  y(0, 0) = initial.alpha1;
  y(1, 0) = initial.beta1;
  y(2, 0) = initial.alpha2;
  y(3, 0) = initial.beta2;

  const double initial_norm_sq = initial.norm_sq();
  double max_norm_sq = initial_norm_sq;
  for (int i = 0; i < n_samples; ++i) {
    const double t0 = t_start + (t_end - t_start) * i / (n_samples - 1);
    if (i > 0) {
      const double tprev =
          t_start + (t_end - t_start) * (i - 1) / (n_samples - 1);
      y = integrate_ode(rhs, y, tprev, t0, opts);
    }
    TransferState s;
    s.alpha1 = y(0, 0);
    s.beta1 = y(1, 0);
    s.alpha2 = y(2, 0);
    s.beta2 = y(3, 0);
    s.t = t0;
    max_norm_sq = std::max(max_norm_sq, s.norm_sq());
    tr.samples.push_back(s);
  }

  const TransferState& last = tr.samples.back();
  tr.summary.final_alpha2_sq = std::norm(last.alpha2);
  tr.summary.final_beta1_sq = std::norm(last.beta1);
  tr.summary.final_beta2_sq = std::norm(last.beta2);
  tr.summary.final_norm_sq = last.norm_sq();
  tr.summary.accumulated_loss = initial_norm_sq - last.norm_sq();
  tr.summary.max_norm_sq = max_norm_sq;
  return tr;
}

double symmetry_check(const PulsePair& pulses, int n_grid) {
  const double t_max =
      std::max(std::abs(pulses.t_start), std::abs(pulses.t_end));
  if (!(t_max > 0.0)) {
    throw std::invalid_argument(
        "symmetry_check: pulse pair carries no window; pass t_max");
  }
  return symmetry_check(pulses, t_max, n_grid);
}

double symmetry_check(const PulsePair& pulses, double t_max, int n_grid) {
  if (!(t_max > 0.0) || n_grid < 2) {
    throw std::invalid_argument("symmetry_check: bad grid");
  }
  double worst = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    const double t = -t_max + 2.0 * t_max * i / (n_grid - 1);
    worst = std::max(worst, std::abs(pulses.gamma2_of_t(t) -
                                     pulses.gamma1_of_t(-t)));
  }
  return worst;
}

void write_trajectory_csv(std::ostream& os, const TransferTrajectory& tr) {
  os << "t,alpha1_re,alpha1_im,beta1_re,beta1_im,alpha2_re,alpha2_im,"
        "beta2_re,beta2_im,norm\n";
  char buf[64];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g%c", v, sep);
    os << buf;
  };
  for (const auto& s : tr.samples) {
    put(s.t, ',');
    put(s.alpha1.real(), ',');
    put(s.alpha1.imag(), ',');
    put(s.beta1.real(), ',');
    put(s.beta1.imag(), ',');
    put(s.alpha2.real(), ',');
    put(s.alpha2.imag(), ',');
    put(s.beta2.real(), ',');
    put(s.beta2.imag(), ',');
    put(std::sqrt(s.norm_sq()), '\n');
  }
}

}  // namespace jqc
