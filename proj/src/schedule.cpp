#include "jqc/schedule.hpp"

#include <cmath>
#include <stdexcept>

#include "jqc/ode.hpp"

namespace jqc {

namespace {

// Lab-frame Hamiltonian for the segment's level; rwa has no lab-frame form.
Operator lab_hamiltonian(const DeviceModel& d, ApproximationLevel level) {
  switch (level) {
    case ApproximationLevel::exact:
      return build_h0(d) + build_hint_exact(d);
    case ApproximationLevel::lamb_dicke_first_order:
      return build_h0(d) + build_hint_first_order(d);
    case ApproximationLevel::sideband_rwa:
      throw std::invalid_argument(
          "run_schedule: level rwa is defined only in the rotating frame");
  }
  throw std::invalid_argument("run_schedule: unknown level");
}

Operator segment_propagator(const DeviceModel& d, const PulseSegment& seg,
                            ScheduleEngine engine, double tol) {
  const Eigen::Index dim = hilbert_dim(d);
  if (seg.frame == Frame::lab) {
    const Operator h = lab_hamiltonian(d, seg.level);
    if (engine == ScheduleEngine::product_exact) {
      return expm(h, seg.duration);
    }
    return integrate_propagator([&](double) { return h.mat; }, dim, 0.0,
                                seg.duration, tol);
  }
  // Rotating frame.
  if (seg.level == ApproximationLevel::sideband_rwa) {
    const Operator h = build_rwa_hamiltonian(d);
    if (engine == ScheduleEngine::product_exact) {
      return expm(h, seg.duration);
    }
    return integrate_propagator([&](double) { return h.mat; }, dim, 0.0,
                                seg.duration, tol);
  }
  if (engine == ScheduleEngine::product_exact) {
    return expm(build_h0(d), -seg.duration) *
           expm(lab_hamiltonian(d, seg.level), seg.duration);
  }
  return integrate_propagator(
      [&](double t) { return rotating_frame_hint(d, seg.level, t); }, dim, 0.0,
      seg.duration, tol);
}

SegmentResiduals segment_residuals(const DeviceModel& d) {
  SegmentResiduals r;
  const double nu = d.cavity.nu;
  for (const auto& q : d.qubits) {
    const double bias = charging_bias(q);
    r.carrier.push_back(std::abs(bias));
    r.blue.push_back(std::abs(2.0 * bias + nu));
    r.red.push_back(std::abs(2.0 * bias - nu));
  }
  return r;
}

}  // namespace

DeviceModel apply_segment(const DeviceModel& base, const PulseSegment& seg) {
  if (seg.settings.size() != base.qubits.size()) {
    throw std::invalid_argument(
        "apply_segment: settings must cover every qubit");
  }
  DeviceModel d = base;
  for (std::size_t k = 0; k < d.qubits.size(); ++k) {
    d.qubits[k].n_bar = seg.settings[k].n_bar;
    d.qubits[k].flux_ratio = seg.settings[k].flux_ratio;
  }
  validate(d);
  return d;
}

Vector resolve_basis(const DeviceModel& d, const BasisLabel& label) {
  if (label.qubit_bits.size() != d.qubits.size()) {
    throw std::invalid_argument(
        "resolve_basis: one bit per qubit required");
  }
  Eigen::Index b = 0;
  for (char c : label.qubit_bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("resolve_basis: bits must be '0' or '1'");
    }
    b = 2 * b + (c - '0');
  }
  if (label.photon < 0 || label.photon >= d.cavity.n_ph) {
    throw std::invalid_argument("resolve_basis: photon index out of range");
  }
  Vector v = Vector::Zero(hilbert_dim(d));
  v(b * d.cavity.n_ph + label.photon) = 1.0;
  return v;
}

ScheduleResult run_schedule(const DeviceModel& base, const Schedule& s,
                            ScheduleEngine engine, double tol) {
  validate(base);
  if (s.segments.empty()) {
    throw std::invalid_argument("run_schedule: empty schedule");
  }
  const Eigen::Index dim = hilbert_dim(base);

  ScheduleResult out;
  out.propagator = identity(dim);
  out.diagnostics.residuals.reserve(s.segments.size());

  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    const PulseSegment& seg = s.segments[i];
    const std::string where = "segment " + std::to_string(i) + ": ";
    if (!(seg.duration > 0.0)) {
      throw std::invalid_argument(where + "duration must be positive");
    }
    try {
      const DeviceModel d = apply_segment(base, seg);
      out.diagnostics.residuals.push_back(segment_residuals(d));
      out.propagator = segment_propagator(d, seg, engine, tol) * out.propagator;
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + e.what());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(where + e.what());
    }
  }

  const Matrix& u = out.propagator.mat;
  out.diagnostics.norm_drift =
      (u.adjoint() * u - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();

  if (s.initial_amplitudes || s.initial_basis) {
    Vector psi0;
    if (s.initial_amplitudes) {
      psi0 = *s.initial_amplitudes;
      if (psi0.size() != dim) {
        throw std::invalid_argument(
            "run_schedule: initial amplitudes have wrong dimension");
      }
    } else {
      psi0 = resolve_basis(base, *s.initial_basis);
    }
    out.final_state = u * psi0;
  }
  return out;
}

const char* frame_name(Frame f) {
  return f == Frame::lab ? "lab" : "rotating";
}

Frame frame_from_name(const std::string& s) {
  if (s == "lab") return Frame::lab;
  if (s == "rotating") return Frame::rotating;
  throw std::invalid_argument("unknown frame: " + s);
}

const char* level_name(ApproximationLevel l) {
  switch (l) {
    case ApproximationLevel::exact:
      return "exact";
    case ApproximationLevel::lamb_dicke_first_order:
      return "first_order";
    case ApproximationLevel::sideband_rwa:
      return "rwa";
  }
  throw std::invalid_argument("unknown level");
}

ApproximationLevel level_from_name(const std::string& s) {
  if (s == "exact") return ApproximationLevel::exact;
  if (s == "first_order") return ApproximationLevel::lamb_dicke_first_order;
  if (s == "rwa") return ApproximationLevel::sideband_rwa;
  throw std::invalid_argument("unknown level: " + s);
}

nlohmann::json schedule_to_json(const Schedule& s) {
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& seg : s.segments) {
    nlohmann::json qubits = nlohmann::json::array();
    for (const auto& q : seg.settings) {
      qubits.push_back({{"n_bar", q.n_bar}, {"flux_ratio", q.flux_ratio}});
    }
    segs.push_back({{"duration", seg.duration},
                    {"qubits", std::move(qubits)},
                    {"frame", frame_name(seg.frame)},
                    {"level", level_name(seg.level)}});
  }
  nlohmann::json j{{"segments", std::move(segs)}};
  if (s.initial_amplitudes) {
    nlohmann::json amps = nlohmann::json::array();
    for (Eigen::Index i = 0; i < s.initial_amplitudes->size(); ++i) {
      const Complex c = (*s.initial_amplitudes)(i);
      amps.push_back({c.real(), c.imag()});
    }
    j["initial_state"] = {{"amplitudes", std::move(amps)}};
  } else if (s.initial_basis) {
    j["initial_state"] = {{"qubits", s.initial_basis->qubit_bits},
                          {"photon", s.initial_basis->photon}};
  }
  return j;
}

Schedule schedule_from_json(const nlohmann::json& j) {
  Schedule s;
  for (const auto& jseg : j.at("segments")) {
    PulseSegment seg;
    seg.duration = jseg.at("duration").get<double>();
    for (const auto& jq : jseg.at("qubits")) {
      seg.settings.push_back({jq.at("n_bar").get<double>(),
                              jq.at("flux_ratio").get<double>()});
    }
    seg.frame = frame_from_name(jseg.at("frame").get<std::string>());
    seg.level = level_from_name(jseg.at("level").get<std::string>());
    s.segments.push_back(std::move(seg));
  }
  if (j.contains("initial_state")) {
    const auto& init = j.at("initial_state");
    if (init.contains("amplitudes")) {
      const auto& amps = init.at("amplitudes");
      Vector v(amps.size());
      for (std::size_t i = 0; i < amps.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) =
            Complex(amps[i].at(0).get<double>(), amps[i].at(1).get<double>());
      }
      s.initial_amplitudes = std::move(v);
    } else {
      s.initial_basis = BasisLabel{init.at("qubits").get<std::string>(),
                                   init.at("photon").get<int>()};
    }
  }
  return s;
}

}  // namespace jqc
