#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jqc/hamiltonian.hpp"

// Pulse-level realization of the gate gallery: piecewise-constant control of
// every qubit's (n_bar, flux_ratio), evolved segment by segment at a chosen
// frame and approximation level.
//
// Frame semantics: "rotating" means each segment evolves in the interaction
// picture of its own H0 with the clock reset at the segment start,
//   U_seg = exp(+i H0 dur) exp(-i (H0 + H_int) dur),
// which is exact for a piecewise-constant Hamiltonian and matches the ideal
// resonant gates (their stationary terms carry no clock).  A single-origin
// frame differs only by interleaved free rotations; compose frame = lab
// segments and undo H0 by hand if that is wanted.

namespace jqc {

// Control point for one qubit during one segment.
struct QubitSetting {
  double n_bar = 0.5;
  double flux_ratio = 0.5;
};

// Idle qubits park at the decoupling point: zero bias and zero junction
// energy for a symmetric SQUID.
inline constexpr QubitSetting kParkedSetting{0.5, 0.5};

struct PulseSegment {
  double duration = 0.0;
  std::vector<QubitSetting> settings;  // one entry per qubit, in device order
  Frame frame = Frame::rotating;
  ApproximationLevel level = ApproximationLevel::exact;
};

// Basis label resolved against the device at run time: qubit bits in device
// order ('0'/'1'), plus a Fock index.
struct BasisLabel {
  std::string qubit_bits;
  int photon = 0;
};

struct Schedule {
  std::vector<PulseSegment> segments;
  // At most one of these; amplitudes win if both are set.
  std::optional<Vector> initial_amplitudes;
  std::optional<BasisLabel> initial_basis;
};

enum class ScheduleEngine {
  // Two eigendecompositions per segment; exact up to diagonalization
  // round-off, cost independent of duration.
  product_exact,
  // Adaptive integration of the same generator; cross-checks the product
  // route but walks every oscillation, so keep durations moderate.
  ode,
};

// How far each qubit sits from the three stationarity points of the
// first-order interaction, in the segment it was measured in: the carrier
// (|bias|), blue sideband (|2 bias + nu|), and red sideband (|2 bias - nu|).
struct SegmentResiduals {
  std::vector<double> carrier;
  std::vector<double> blue;
  std::vector<double> red;
};

struct ScheduleDiagnostics {
  // Unitarity defect of the final propagator, max |U^dag U - 1|.
  double norm_drift = 0.0;
  std::vector<SegmentResiduals> residuals;  // one per segment
};

struct ScheduleResult {
  Operator propagator;
  // Set when the schedule carries an initial state.
  std::optional<Vector> final_state;
  ScheduleDiagnostics diagnostics;
};

// The base device with one segment's control settings applied.
DeviceModel apply_segment(const DeviceModel& base, const PulseSegment& seg);

// Resolve a basis label to an amplitude vector for this device.
Vector resolve_basis(const DeviceModel& d, const BasisLabel& label);

// Sequential evolution through all segments.  Validation failures throw
// std::invalid_argument; integration failures propagate with the segment
// index prepended.
ScheduleResult run_schedule(const DeviceModel& base, const Schedule& s,
                            ScheduleEngine engine = ScheduleEngine::product_exact,
                            double tol = 1e-10);

// JSON layout:
//   {"segments": [{"duration": t,
//                  "qubits": [{"n_bar": x, "flux_ratio": y}, ...],
//                  "frame": "lab" | "rotating",
//                  "level": "exact" | "first_order" | "rwa"}, ...],
//    "initial_state": {"qubits": "10", "photon": 0}          // basis form
//                   | {"amplitudes": [[re, im], ...]}}       // explicit form
// initial_state is optional.
nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

const char* frame_name(Frame f);
Frame frame_from_name(const std::string& s);
const char* level_name(ApproximationLevel l);
ApproximationLevel level_from_name(const std::string& s);

}  // namespace jqc
