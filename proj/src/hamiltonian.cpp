#include "jqc/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace jqc {

namespace {

constexpr double kResonanceTol = 1e-9;

void check_qubit_index(const DeviceModel& d, std::size_t k) {
  if (k >= d.qubits.size()) {
    throw std::invalid_argument("qubit index out of range");
  }
}

// Signed symmetric-SQUID energy 2 e_j0 cos(pi f); rejects asymmetric qubits.
double ej0_signed(const QubitParams& q) {
  if (std::abs(q.e_j1 - q.e_j2) > 1e-12 * std::max(1.0, q.e_j1 + q.e_j2)) {
    throw std::invalid_argument("symmetric SQUID required (e_j1 = e_j2)");
  }
  return 2.0 * q.e_j1 * std::cos(M_PI * q.flux_ratio);
}

// -(E_J/2)(e^{-i beta} sigma+_k (x) photon_factor + h.c.) lifted to the full
// space; shared by the exact, first-order, and symmetric builders.
Operator junction_term(const DeviceModel& d, std::size_t k, double e_j,
                       double beta, const Matrix& photon_factor) {
  std::vector<Operator> factors;
  factors.reserve(d.qubits.size() + 1);
  for (std::size_t i = 0; i < d.qubits.size(); ++i) {
    factors.push_back(i == k ? sigma_plus() : identity(2));
  }
  factors.emplace_back(photon_factor);
  const Matrix raised = kron(factors).mat;
  const Complex c = -0.5 * e_j * std::exp(Complex(0, -beta));
  Matrix term = c * raised;
  return Operator(Matrix(term + term.adjoint()));
}

}  // namespace

Operator lift_qubit_op(const DeviceModel& d, std::size_t k,
                       const Operator& op) {
  check_qubit_index(d, k);
  if (op.dim() != 2) throw std::invalid_argument("lift_qubit_op: need 2x2");
  std::vector<Operator> factors;
  for (std::size_t i = 0; i < d.qubits.size(); ++i) {
    factors.push_back(i == k ? op : identity(2));
  }
  factors.push_back(identity(d.cavity.n_ph));
  return kron(factors);
}

Operator lift_mode_op(const DeviceModel& d, const Operator& op) {
  if (op.dim() != d.cavity.n_ph) {
    throw std::invalid_argument("lift_mode_op: dimension != n_ph");
  }
  std::vector<Operator> factors;
  for (std::size_t i = 0; i < d.qubits.size(); ++i) factors.push_back(identity(2));
  factors.push_back(op);
  return kron(factors);
}

Operator displacement_factor(int n_ph, double g) {
  const Operator a = annihilation(n_ph);
  const Operator x(Matrix(a.mat + a.mat.adjoint()));
  // exp(-i g x) through the hermitian-eigendecomposition exponential.
  return expm(x, g);
}

Operator build_h0(const DeviceModel& d) {
  validate(d);
  Operator h = lift_mode_op(
      d, Operator(Matrix(d.cavity.nu *
                         (number_operator(d.cavity.n_ph).mat +
                          0.5 * Matrix::Identity(d.cavity.n_ph, d.cavity.n_ph)))));
  for (std::size_t k = 0; k < d.qubits.size(); ++k) {
    const double bias = charging_bias(d.qubits[k]);
    if (bias != 0.0) {
      h = h + Operator(Matrix(bias * lift_qubit_op(d, k, pauli_z()).mat));
    }
  }
  h.label = "H0";
  return h;
}

Operator build_hint_exact(const DeviceModel& d) {
  validate(d);
  const Matrix disp = displacement_factor(d.cavity.n_ph, d.cavity.g).mat;
  Operator h(Matrix::Zero(hilbert_dim(d), hilbert_dim(d)));
  for (std::size_t k = 0; k < d.qubits.size(); ++k) {
    const auto& q = d.qubits[k];
    if (q.e_j1 + q.e_j2 <= 0) continue;
    h = h + junction_term(d, k, ej_effective(q), beta_mixing(q), disp);
  }
  h.label = "Hint";
  return h;
}

Operator build_hint_first_order(const DeviceModel& d) {
  validate(d);
  const Operator a = annihilation(d.cavity.n_ph);
  const Matrix lin =
      Matrix::Identity(d.cavity.n_ph, d.cavity.n_ph) +
      Complex(0, -d.cavity.g) * (a.mat + a.mat.adjoint());
  Operator h(Matrix::Zero(hilbert_dim(d), hilbert_dim(d)));
  for (std::size_t k = 0; k < d.qubits.size(); ++k) {
    const auto& q = d.qubits[k];
    if (q.e_j1 + q.e_j2 <= 0) continue;
    h = h + junction_term(d, k, ej_effective(q), beta_mixing(q), lin);
  }
  h.label = "Hint1";
  return h;
}

double label_bias(const CavityParams& c, SidebandBranch branch) {
  return branch == SidebandBranch::blue ? c.nu : -c.nu;
}

double resonant_bias(const CavityParams& c, SidebandBranch branch) {
  return branch == SidebandBranch::blue ? -0.5 * c.nu : 0.5 * c.nu;
}

Operator sideband_generator(const DeviceModel& d, std::size_t k, double beta,
                            SidebandBranch branch) {
  validate(d);
  check_qubit_index(d, k);
  const auto& q = d.qubits[k];
  const double e_j = ej_effective(q);
  const Operator a = annihilation(d.cavity.n_ph);
  const Matrix ladder =
      branch == SidebandBranch::blue ? a.mat : Matrix(a.mat.adjoint());
  std::vector<Operator> factors;
  for (std::size_t i = 0; i < d.qubits.size(); ++i) {
    factors.push_back(i == k ? sigma_plus() : identity(2));
  }
  factors.emplace_back(ladder);
  const Complex c =
      0.5 * e_j * d.cavity.g * Complex(0, 1) * std::exp(Complex(0, -beta));
  Matrix term = c * kron(factors).mat;
  Operator h = Operator(Matrix(term + term.adjoint()));
  h.label = branch == SidebandBranch::blue ? "Hblue" : "Hred";
  return h;
}

Operator build_sideband_h(const DeviceModel& d, std::size_t k,
                          SidebandBranch branch) {
  check_qubit_index(d, k);
  const double bias = charging_bias(d.qubits[k]);
  const double want = label_bias(d.cavity, branch);
  if (std::abs(bias - want) > kResonanceTol) {
    throw std::invalid_argument(
        "build_sideband_h: qubit bias not at the labeled sideband point");
  }
  return sideband_generator(d, k, beta_mixing(d.qubits[k]), branch);
}

Operator build_symmetric_h1(const DeviceModel& d) {
  validate(d);
  const Matrix disp = displacement_factor(d.cavity.n_ph, d.cavity.g).mat;
  Operator h(Matrix::Zero(hilbert_dim(d), hilbert_dim(d)));
  for (std::size_t k = 0; k < d.qubits.size(); ++k) {
    const double ej0 = ej0_signed(d.qubits[k]);  // throws if asymmetric
    if (ej0 == 0.0) continue;
    h = h + junction_term(d, k, ej0, 0.0, disp);
  }
  h.label = "H1";
  return h;
}

Operator build_capacitive_h2(const DeviceModel& d) {
  validate(d);
  if (d.qubits.size() < 2) {
    throw std::invalid_argument("build_capacitive_h2: need at least 2 qubits");
  }
  Matrix n_op = Matrix::Zero(2, 2);
  n_op(1, 1) = 1.0;  // charge number on {|0>, |1>}
  Operator h(Matrix::Zero(hilbert_dim(d), hilbert_dim(d)));
  for (std::size_t k = 0; k + 1 < d.qubits.size(); ++k) {
    const Operator d1(
        Matrix(d.qubits[k].n_bar * Matrix::Identity(2, 2) - n_op));
    const Operator d2(
        Matrix(d.qubits[k + 1].n_bar * Matrix::Identity(2, 2) - n_op));
    std::vector<Operator> factors;
    for (std::size_t i = 0; i < d.qubits.size(); ++i) {
      if (i == k) {
        factors.push_back(d1);
      } else if (i == k + 1) {
        factors.push_back(d2);
      } else {
        factors.push_back(identity(2));
      }
    }
    factors.push_back(identity(d.cavity.n_ph));
    h = h + Operator(Matrix(d.capacitive_ec * kron(factors).mat));
  }
  h.label = "H2";
  return h;
}

Operator build_rotating_ha_hb(const DeviceModel& d, std::size_t k,
                              char which) {
  check_qubit_index(d, k);
  const auto& q = d.qubits[k];
  const double bias = charging_bias(q);
  const double ej0 = ej0_signed(q);
  if (which == 'a') {
    if (std::abs(bias) > kResonanceTol) {
      throw std::invalid_argument(
          "build_rotating_ha_hb: H_a needs the degeneracy point (bias = 0)");
    }
    Operator h(Matrix(-ej0 * lift_qubit_op(d, k, pauli_x()).mat));
    h.label = "Ha";
    return h;
  }
  if (which == 'b') {
    if (std::abs(bias - d.cavity.nu) > kResonanceTol) {
      throw std::invalid_argument(
          "build_rotating_ha_hb: H_b needs bias = nu");
    }
    // Same structure as the blue generator at beta = 0 with signed E_J^0.
    const Operator a = annihilation(d.cavity.n_ph);
    std::vector<Operator> factors;
    for (std::size_t i = 0; i < d.qubits.size(); ++i) {
      factors.push_back(i == k ? sigma_plus() : identity(2));
    }
    factors.emplace_back(a.mat);
    Matrix term = 0.5 * ej0 * d.cavity.g * Complex(0, 1) * kron(factors).mat;
    Operator h = Operator(Matrix(term + term.adjoint()));
    h.label = "Hb";
    return h;
  }
  throw std::invalid_argument("build_rotating_ha_hb: which must be 'a' or 'b'");
}

Matrix rotating_frame_hint(const DeviceModel& d, ApproximationLevel level,
                           double t) {
  const Operator hint = level == ApproximationLevel::exact
                            ? build_hint_exact(d)
                            : build_hint_first_order(d);
  if (level == ApproximationLevel::sideband_rwa) {
    throw std::invalid_argument(
        "rotating_frame_hint: use build_rwa_hamiltonian for sideband_rwa");
  }
  const Eigen::VectorXcd diag = build_h0(d).mat.diagonal();
  const Eigen::Index dim = hint.dim();
  Matrix out(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      const double de = diag(a).real() - diag(b).real();
      out(a, b) = hint.mat(a, b) * std::exp(Complex(0, de * t));
    }
  }
  return out;
}

Operator build_rwa_hamiltonian(const DeviceModel& d) {
  validate(d);
  const double tol = kResonanceTol * std::max(1.0, d.cavity.nu);
  Operator h(Matrix::Zero(hilbert_dim(d), hilbert_dim(d)));
  for (std::size_t k = 0; k < d.qubits.size(); ++k) {
    const auto& q = d.qubits[k];
    if (q.e_j1 + q.e_j2 <= 0) continue;
    const double bias = charging_bias(q);
    const double beta = beta_mixing(q);
    if (std::abs(2 * bias + d.cavity.nu) <= tol) {
      h = h + sideband_generator(d, k, beta, SidebandBranch::blue);
    } else if (std::abs(2 * bias - d.cavity.nu) <= tol) {
      h = h + sideband_generator(d, k, beta, SidebandBranch::red);
    } else if (std::abs(bias) <= tol) {
      // Stationary bare carrier at the degeneracy point.
      Matrix term = Matrix::Zero(2, 2);
      term(1, 0) = -0.5 * ej_effective(q) * std::exp(Complex(0, -beta));
      Operator carrier(Matrix(term + Matrix(term.adjoint())));
      h = h + lift_qubit_op(d, k, carrier);
    } else {
      throw std::invalid_argument(
          "build_rwa_hamiltonian: qubit " + std::to_string(k) +
          " has no stationary first-order term at its bias");
    }
  }
  h.label = "Hrwa";
  return h;
}

}  // namespace jqc
