#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

// Dense complex operator algebra for small qubit+mode Hilbert spaces.
// Conventions used throughout:
//   - hbar = 1; propagators are exp(-i H t) with H hermitian,
//   - qubit basis |0>, |1> with sigma_z = diag(+1, -1),
//   - tensor order: qubit 1 (slowest index) ... qubit N, then the mode.

namespace jqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
// kron refuses to build spaces larger than this unless the caller raises the cap.
inline constexpr std::size_t kDefaultDimCap = std::size_t{1} << 20;

// Square complex matrix with an optional human-readable label.
struct Operator {
  Matrix mat;
  std::string label;

  Operator() = default;
  explicit Operator(Matrix m, std::string lbl = "");

  Eigen::Index dim() const { return mat.rows(); }
  bool is_hermitian(double tol = kHermitianTol) const;
  bool is_unitary(double tol = 1e-10) const;
  Operator adjoint() const { return Operator(mat.adjoint(), label); }
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(Complex s, const Operator& a);

// Normalized-or-not complex amplitude vector.
struct StateVector {
  Vector amps;

  StateVector() = default;
  explicit StateVector(Vector v) : amps(std::move(v)) {}

  Eigen::Index dim() const { return amps.size(); }
  double norm() const { return amps.norm(); }
};

// Basis state |index> in a dim-dimensional space.
StateVector basis_state(Eigen::Index dim, Eigen::Index index);

// |<a|b>|^2 for unit-normalized inputs (not renormalized here).
double state_overlap(const StateVector& a, const StateVector& b);

// Identity of dimension n.
Operator identity(Eigen::Index n);

// Truncated mode annihilation operator on n_levels Fock states |0..n_levels-1>;
// <n-1|a|n> = sqrt(n).  Requires n_levels >= 2.
Operator annihilation(Eigen::Index n_levels);

// Number operator a^dag a on n_levels Fock states.
Operator number_operator(Eigen::Index n_levels);

// Pauli matrices and qubit ladder operators (sigma_plus = |1><0| raises the
// charge state, i.e. the sigma_z = -1 eigenstate is "excited" |1>).
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
Operator sigma_plus();
Operator sigma_minus();

// Kronecker products; factor order fixes the global basis order.
Operator kron(const Operator& a, const Operator& b,
              std::size_t dim_cap = kDefaultDimCap);
Operator kron(const std::vector<Operator>& factors,
              std::size_t dim_cap = kDefaultDimCap);

// exp(-i h t) for hermitian h, via eigendecomposition.  Throws
// std::invalid_argument if h is not hermitian within kHermitianTol.
Operator expm(const Operator& h, double t);

// |tr(U^dag V)| / dim: gate fidelity insensitive to global phase.
// Both inputs must be unitary within 1e-8 and share dimensions.
double phase_invariant_fidelity(const Operator& u, const Operator& v);

// Local-gate-invariant classification of a two-qubit unitary.
// (identity -> g1 = 1, g2 = 3; controlled-NOT class -> g1 = 0, g2 = 1).
struct MakhlinInvariants {
  Complex g1;
  double g2;
};
MakhlinInvariants makhlin_invariants(const Operator& u);

// Polar factor of m (SVD phase): the unitary closest to m in Frobenius norm.
Matrix closest_unitary(const Matrix& m);

// Sub-block of u on the given basis indices, plus the worst-case amplitude
// that any kept column sends outside the kept subspace.
struct BlockExtraction {
  Operator block;
  double leakage;
};
BlockExtraction extract_block(const Operator& u,
                              const std::vector<Eigen::Index>& keep);

// Deterministic pseudo-random stream for test tuples; the mapping from the
// 64-bit state to [0,1) is fixed here rather than taken from the standard
// library so that sequences are identical on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}
  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);

 private:
  std::uint64_t next_u64();
  std::uint64_t state_;
};

}  // namespace jqc
