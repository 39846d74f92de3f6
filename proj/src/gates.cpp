#include "jqc/gates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jqc {

namespace {

constexpr double kFluxTol = 1e-9;

// (i e^{-i beta} sigma+_k (x) ladder + h.c.): the sideband generator with the
// E_J g / 2 rate divided out.  exp(-i (theta/2) K) is the ideal pulse.
Operator sideband_structure(const DeviceModel& d, std::size_t k, double beta,
                            SidebandBranch branch) {
  if (k >= d.qubits.size()) {
    throw std::invalid_argument("qubit index out of range");
  }
  const Operator a = annihilation(d.cavity.n_ph);
  const Matrix ladder =
      branch == SidebandBranch::blue ? a.mat : Matrix(a.mat.adjoint());
  std::vector<Operator> factors;
  for (std::size_t i = 0; i < d.qubits.size(); ++i) {
    factors.push_back(i == k ? sigma_plus() : identity(2));
  }
  factors.emplace_back(ladder);
  const Complex c = Complex(0, 1) * std::exp(Complex(0, -beta));
  Matrix term = c * kron(factors).mat;
  return Operator(Matrix(term + term.adjoint()));
}

// Signed swap rate Gamma = g E_J^0(phi)/2 for a symmetric SQUID; the transfer
// pulses are only defined where it is positive.
double swap_rate(const DeviceModel& d, std::size_t k) {
  if (k >= d.qubits.size()) {
    throw std::invalid_argument("qubit index out of range");
  }
  const auto& q = d.qubits[k];
  if (std::abs(q.e_j1 - q.e_j2) > 1e-12 * std::max(1.0, q.e_j1 + q.e_j2)) {
    throw std::invalid_argument("swap pulse: symmetric SQUID required");
  }
  const double ej0 = 2.0 * q.e_j1 * std::cos(M_PI * q.flux_ratio);
  return 0.5 * d.cavity.g * ej0;
}

// exp(-i K gamma_t) for the blue structure: the U_kp pulse at angle
// Gamma t = gamma_t.
Operator swap_pulse(const DeviceModel& d, std::size_t k, double gamma_t) {
  if (swap_rate(d, k) <= 0.0) {
    throw std::invalid_argument(
        "swap pulse: Gamma = g E_J^0 / 2 must be positive");
  }
  return expm(sideband_structure(d, k, 0.0, SidebandBranch::blue), gamma_t);
}

}  // namespace

nlohmann::json report_to_json(const GateReport& r) {
  return nlohmann::json{{"target_name", r.target_name},
                        {"fidelity", r.fidelity},
                        {"leakage", r.leakage},
                        {"makhlin_g1_re", r.makhlin_g1.real()},
                        {"makhlin_g1_im", r.makhlin_g1.imag()},
                        {"makhlin_g2", r.makhlin_g2}};
}

GateReport report_from_json(const nlohmann::json& j) {
  GateReport r;
  r.target_name = j.at("target_name").get<std::string>();
  r.fidelity = j.at("fidelity").get<double>();
  r.leakage = j.at("leakage").get<double>();
  r.makhlin_g1 = Complex(j.at("makhlin_g1_re").get<double>(),
                         j.at("makhlin_g1_im").get<double>());
  r.makhlin_g2 = j.at("makhlin_g2").get<double>();
  return r;
}

Operator u_single(double gamma, const Eigen::Vector3d& axis) {
  if (std::abs(axis.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("u_single: axis must be a unit vector");
  }
  const Matrix sn = axis(0) * pauli_x().mat + axis(1) * pauli_y().mat +
                    axis(2) * pauli_z().mat;
  Matrix u = std::cos(gamma) * Matrix::Identity(2, 2) +
             Complex(0, -std::sin(gamma)) * sn;
  return Operator(std::move(u), "u_single");
}

AxisRate axis_from_params(const QubitParams& q) {
  validate(q);
  const double e_j = ej_effective(q);
  const double bias = charging_bias(q);
  const double e_k = std::hypot(e_j, bias);
  if (e_k == 0.0) {
    throw std::domain_error(
        "axis_from_params: zero rotation rate (E_J = 0 and bias = 0)");
  }
  // A junction-free qubit still rotates about z; beta only matters with E_J.
  const double beta = e_j > 0.0 ? beta_mixing(q) : 0.0;
  Eigen::Vector3d n(-e_j * std::cos(beta), e_j * std::sin(beta), bias);
  return AxisRate{e_k, n / e_k};
}

double noncommuting_pair_check(const Operator& u1, const Operator& u2) {
  if (u1.dim() != u2.dim()) {
    throw std::invalid_argument("noncommuting_pair_check: dimension mismatch");
  }
  return (u1.mat * u2.mat - u2.mat * u1.mat).cwiseAbs().maxCoeff();
}

Operator hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return Operator(Matrix(h / std::sqrt(2.0)), "H");
}

Operator z_phase(double zeta) {
  Matrix z = Matrix::Identity(2, 2);
  z(1, 1) = std::exp(Complex(0, zeta));
  return Operator(std::move(z), "Z");
}

Operator r_sideband(const DeviceModel& d, std::size_t k, double theta,
                    double beta, SidebandBranch branch) {
  validate(d);
  return expm(sideband_structure(d, k, beta, branch), 0.5 * theta);
}

Operator conditional_phase(const DeviceModel& d, double t) {
  validate(d);
  if (d.qubits.size() != 2) {
    throw std::invalid_argument("conditional_phase: need exactly 2 qubits");
  }
  if (d.capacitive_ec <= 0.0) {
    throw std::invalid_argument("conditional_phase: capacitive_ec must be > 0");
  }
  for (const auto& q : d.qubits) {
    if (std::abs(q.e_j1 - q.e_j2) > 1e-12 * std::max(1.0, q.e_j1 + q.e_j2) ||
        std::abs(q.flux_ratio - 0.5) > kFluxTol) {
      throw std::invalid_argument(
          "conditional_phase: both SQUIDs must be symmetric at half flux");
    }
  }
  const double b1 = charging_bias(d.qubits[0]);
  const double b2 = charging_bias(d.qubits[1]);
  Matrix u = Matrix::Zero(4, 4);
  for (int n1 = 0; n1 < 2; ++n1) {
    for (int n2 = 0; n2 < 2; ++n2) {
      const double s1 = n1 == 0 ? 1.0 : -1.0;
      const double s2 = n2 == 0 ? 1.0 : -1.0;
      const double omega = b1 * s1 + b2 * s2 +
                           d.capacitive_ec * (d.qubits[0].n_bar - n1) *
                               (d.qubits[1].n_bar - n2);
      u(2 * n1 + n2, 2 * n1 + n2) = std::exp(Complex(0, -omega * t));
    }
  }
  return Operator(std::move(u), "Ucond");
}

Operator swap_qubit_photon(const DeviceModel& d, std::size_t k,
                           int n_winding) {
  validate(d);
  if (n_winding < 1) {
    throw std::invalid_argument("swap_qubit_photon: n_winding must be >= 1");
  }
  return swap_pulse(d, k, (2.0 * n_winding - 0.5) * M_PI);
}

Operator swap_qubit_qubit(const DeviceModel& d, std::size_t j, std::size_t k) {
  validate(d);
  if (j == k) {
    throw std::invalid_argument("swap_qubit_qubit: distinct qubits required");
  }
  // Send k's state to the mode (3pi/2), then absorb it on j (pi/2); the
  // receive pulse's angle class flips the block rotation's sign so the
  // transferred amplitude lands with phase +1.
  return swap_pulse(d, j, 0.5 * M_PI) * swap_pulse(d, k, 1.5 * M_PI);
}

Operator swap_qubit_qubit_literal(const DeviceModel& d, std::size_t j,
                                  std::size_t k) {
  validate(d);
  if (j == k) {
    throw std::invalid_argument("swap_qubit_qubit: distinct qubits required");
  }
  return swap_pulse(d, j, 1.5 * M_PI) * swap_pulse(d, k, 1.5 * M_PI);
}

std::vector<Eigen::Index> vacuum_block_indices(const DeviceModel& d) {
  const auto nq = d.qubits.size();
  std::vector<Eigen::Index> keep;
  keep.reserve(std::size_t{1} << nq);
  for (Eigen::Index b = 0; b < (Eigen::Index{1} << nq); ++b) {
    keep.push_back(b * d.cavity.n_ph);
  }
  return keep;
}

Operator cnot_target_full(std::size_t nq, std::size_t j, std::size_t k) {
  if (j >= nq || k >= nq || j == k) {
    throw std::invalid_argument("cnot_target_full: bad control/target");
  }
  const Eigen::Index dim = Eigen::Index{1} << nq;
  Matrix u = Matrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const bool control_set = (b >> (nq - 1 - j)) & 1;
    const Eigen::Index out =
        control_set ? b ^ (Eigen::Index{1} << (nq - 1 - k)) : b;
    u(out, b) = 1.0;
  }
  return Operator(std::move(u), "CNOT");
}

namespace {

// Shared middle section R_k^+(-pi/2,0) R_k^+(-pi sqrt2,-pi/2) R_k^+(pi/2,0):
// the identity on even-photon rate-sqrt(2) paths, a pure sigma_z phase on the
// {|0,0>,|1,1>}-adjacent rate-1 block.
Operator p_section(const DeviceModel& d, std::size_t k) {
  const auto blue = SidebandBranch::blue;
  return r_sideband(d, k, -0.5 * M_PI, 0.0, blue) *
         r_sideband(d, k, -M_PI * std::sqrt(2.0), -0.5 * M_PI, blue) *
         r_sideband(d, k, 0.5 * M_PI, 0.0, blue);
}

}  // namespace

CnotResult cnot_composition(const DeviceModel& d, std::size_t j, std::size_t k,
                            std::optional<double> beta_j) {
  validate(d);
  if (j >= d.qubits.size() || k >= d.qubits.size() || j == k) {
    throw std::invalid_argument("cnot_composition: bad control/target");
  }
  const double bj = beta_j ? *beta_j : beta_mixing(d.qubits[j]);
  const double zeta = -M_PI / (2.0 * std::sqrt(2.0));
  const Operator zj = lift_qubit_op(d, j, z_phase(zeta));
  const Operator zk = lift_qubit_op(d, k, z_phase(zeta));
  const Operator hk = lift_qubit_op(d, k, hadamard());
  const Operator rj = r_sideband(d, j, M_PI, bj, SidebandBranch::red);
  Operator u = zj * rj * hk * p_section(d, k) * zk * hk * rj;
  u.label = "cnot_literal";
  CnotResult res{u, audit_gate(u, cnot_target_full(d.qubits.size(), j, k),
                               vacuum_block_indices(d), "cnot_literal")};
  return res;
}

CnotResult cnot_verified(const DeviceModel& d, std::size_t j, std::size_t k) {
  validate(d);
  if (j >= d.qubits.size() || k >= d.qubits.size() || j == k) {
    throw std::invalid_argument("cnot_verified: bad control/target");
  }
  const Operator hk = lift_qubit_op(d, k, hadamard());
  const Operator zj = lift_qubit_op(d, j, z_phase(M_PI / std::sqrt(2.0) - M_PI));
  const Operator zk = lift_qubit_op(d, k, z_phase(-M_PI / std::sqrt(2.0)));
  const Operator rj = r_sideband(d, j, M_PI, 0.0, SidebandBranch::blue);
  Operator u = hk * zj * zk * rj * p_section(d, k) * rj * hk;
  u.label = "cnot";
  CnotResult res{u, audit_gate(u, cnot_target_full(d.qubits.size(), j, k),
                               vacuum_block_indices(d), "cnot")};
  return res;
}

GateReport audit_gate(const Operator& realized, const Operator& target_block,
                      const std::vector<Eigen::Index>& keep,
                      std::string target_name) {
  if (target_block.dim() != static_cast<Eigen::Index>(keep.size())) {
    throw std::invalid_argument(
        "audit_gate: target dimension != kept subspace size");
  }
  if (!target_block.is_unitary(1e-8)) {
    throw std::invalid_argument("audit_gate: target must be unitary");
  }
  const BlockExtraction ex = extract_block(realized, keep);
  const Matrix& b = ex.block.mat;
  // Leakage already accounts for any non-unitarity of the block; anything
  // beyond that bound means the inputs were inconsistent.
  const double defect =
      (b.adjoint() * b - Matrix::Identity(b.rows(), b.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > 2.0 * ex.leakage + 1e-12) {
    throw std::runtime_error("audit_gate: block defect exceeds leakage bound");
  }
  GateReport r;
  r.target_name = std::move(target_name);
  r.leakage = ex.leakage;
  r.fidelity = std::abs((target_block.mat.adjoint() * b).trace()) /
               static_cast<double>(b.rows());
  if (b.rows() == 4) {
    const MakhlinInvariants mi =
        makhlin_invariants(Operator(closest_unitary(b)));
    r.makhlin_g1 = mi.g1;
    r.makhlin_g2 = mi.g2;
  }
  return r;
}

std::vector<std::pair<Complex, Complex>> bloch_grid(int n) {
  if (n < 1) throw std::invalid_argument("bloch_grid: n must be >= 1");
  std::vector<std::pair<Complex, Complex>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double golden = 0.61803398874989485;
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double theta = std::acos(std::clamp(z, -1.0, 1.0));
    const double phi = 2.0 * M_PI * std::fmod(i * golden, 1.0);
    pts.emplace_back(Complex(std::cos(0.5 * theta), 0.0),
                     std::exp(Complex(0, phi)) * std::sin(0.5 * theta));
  }
  return pts;
}

}  // namespace jqc
