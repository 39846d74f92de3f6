#pragma once

#include <optional>
#include <utility>

#include "jqc/hamiltonian.hpp"

// Ideal gate gallery and audit plumbing.  Every gate here is a closed-form
// unitary assembled from the resonant generators; pulse-level (exact
// Hamiltonian) realizations of the same operations live in schedule.hpp so
// ideal and simulated routes stay independently testable.
//
// Single-qubit closed forms use the full-coefficient convention
// H_k = E_nbar sigma_z - E_J (cos(beta) sigma_x - sin(beta) sigma_y),
// E_k = sqrt(E_J^2 + E_nbar^2); the microscopic interaction contributes the
// junction term with coefficient E_J/2 instead (see hamiltonian.hpp), so a
// pulse realizing u_single needs junction energies doubled.

namespace jqc {

// Fidelity/leakage/local-equivalence audit of a realized unitary against a
// target block.  fidelity is |tr(T^dag B)| / dim on the extracted block (no
// unitarity requirement on B: leakage shows up as a fidelity deficit too).
struct GateReport {
  std::string target_name;
  double fidelity = 0.0;
  double leakage = 0.0;
  Complex makhlin_g1{0.0, 0.0};
  double makhlin_g2 = 0.0;
};

nlohmann::json report_to_json(const GateReport& r);
GateReport report_from_json(const nlohmann::json& j);

// exp(-i gamma sigma.n) = cos(gamma) I - i sin(gamma) sigma.n.
Operator u_single(double gamma, const Eigen::Vector3d& axis);

// Rotation rate E_k and unit axis n = (-E_J cos b, E_J sin b, E_nbar)/E_k.
struct AxisRate {
  double e_k;
  Eigen::Vector3d axis;
};
AxisRate axis_from_params(const QubitParams& q);

// max|u1 u2 - u2 u1|; positive for axes n1 != +-n2.
double noncommuting_pair_check(const Operator& u1, const Operator& u2);

Operator hadamard();
// Z(zeta) = diag(1, e^{i zeta}).
Operator z_phase(double zeta);

// R_k^{+/-}(theta, beta) = exp[-i (theta/2)(i e^{-i beta} sigma+_k a(^dag) + h.c.)]
// on the full space; independent of E_J and g (those only set theta's clock).
Operator r_sideband(const DeviceModel& d, std::size_t k, double theta,
                    double beta, SidebandBranch branch);

// Conditional phase gate diag(e^{i gamma_{n1 n2}}), gamma = -omega t, with
// omega_{n1 n2} the eigenvalues of
//   bias1 sigma_z + bias2 sigma_z + E_c (nbar1 - n1)(nbar2 - n2).
// Needs exactly 2 qubits, both symmetric at half flux, capacitive_ec > 0.
Operator conditional_phase(const DeviceModel& d, double t);

// U_kp pulse at Gamma t = (2 n_winding - 1/2) pi: maps
// (alpha|0_k> + beta|1_k>)|0>_ph -> |0_k>(alpha|0>+beta|1>)_ph exactly.
// Gamma_k = g E_J^0(phi_k)/2 must be positive.
Operator swap_qubit_photon(const DeviceModel& d, std::size_t k, int n_winding);

// State transfer k -> j through the mode: send pulse at Gamma t = 3pi/2 on k,
// receive pulse at Gamma t = pi/2 on j.  The receive angle sits in the
// opposite winding class on purpose: composing two (2n - 1/2)pi pulses as
// printed leaves a residual Z on the receiver (regression-covered via
// swap_qubit_qubit_literal below).
Operator swap_qubit_qubit(const DeviceModel& d, std::size_t j, std::size_t k);
// The as-printed composition U'_jp U'_kp (both at (2n - 1/2) pi).
Operator swap_qubit_qubit_literal(const DeviceModel& d, std::size_t j,
                                  std::size_t k);

// Basis indices of the photon-vacuum computational block, ordered by the
// qubits' binary value.
std::vector<Eigen::Index> vacuum_block_indices(const DeviceModel& d);

// CNOT (control j, target k) on the computational basis of nq qubits.
Operator cnot_target_full(std::size_t nq, std::size_t j, std::size_t k);

struct CnotResult {
  Operator u;  // full-space unitary
  GateReport report;
};

// Literal composition
//   Z_j(-pi/(2 sqrt 2)) R_j^-(pi, beta_j) H_k P_k Z_k(-pi/(2 sqrt 2)) H_k R_j^-(pi, beta_j)
// with P_k = R_k^+(-pi/2, 0) R_k^+(-pi sqrt 2, -pi/2) R_k^+(pi/2, 0),
// audited against CNOT; beta_j defaults to the device's mixing angle.
CnotResult cnot_composition(const DeviceModel& d, std::size_t j, std::size_t k,
                            std::optional<double> beta_j = std::nullopt);

// Re-phased variant derived from the same sideband algebra,
//   H_k Z_j(pi/sqrt2 - pi) Z_k(-pi/sqrt2) R_j^+(pi,0) P_k R_j^+(pi,0) H_k,
// which lands on CNOT exactly (up to global phase).
CnotResult cnot_verified(const DeviceModel& d, std::size_t j, std::size_t k);

// Extract `keep`, audit against the target block, compute Makhlin invariants
// (4x4 blocks only, evaluated on the closest unitary to the block).
GateReport audit_gate(const Operator& realized, const Operator& target_block,
                      const std::vector<Eigen::Index>& keep,
                      std::string target_name);

// Deterministic (alpha, beta) sample grid: n points from a golden-angle
// spiral on the Bloch sphere.
std::vector<std::pair<Complex, Complex>> bloch_grid(int n = 20);

}  // namespace jqc
