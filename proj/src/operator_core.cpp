#include "jqc/operator_core.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

namespace jqc {

Operator::Operator(Matrix m, std::string lbl)
    : mat(std::move(m)), label(std::move(lbl)) {
  if (mat.rows() < 1 || mat.rows() != mat.cols()) {
    throw std::invalid_argument("Operator: matrix must be square, dim >= 1");
  }
}

bool Operator::is_hermitian(double tol) const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
  Matrix d = mat.adjoint() * mat - Matrix::Identity(dim(), dim());
  return d.cwiseAbs().maxCoeff() <= tol;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("Operator product: dimension mismatch");
  }
  return Operator(a.mat * b.mat);
}

Operator operator+(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("Operator sum: dimension mismatch");
  }
  return Operator(a.mat + b.mat);
}

Operator operator-(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("Operator difference: dimension mismatch");
  }
  return Operator(a.mat - b.mat);
}

Operator operator*(Complex s, const Operator& a) { return Operator(s * a.mat); }

StateVector basis_state(Eigen::Index dim, Eigen::Index index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw std::invalid_argument("basis_state: index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

double state_overlap(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("state_overlap: dimension mismatch");
  }
  return std::norm(a.amps.dot(b.amps));
}

Operator identity(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("identity: dim >= 1 required");
  return Operator(Matrix::Identity(n, n));
}

Operator annihilation(Eigen::Index n_levels) {
  if (n_levels < 2) {
    throw std::invalid_argument("annihilation: need at least 2 Fock levels");
  }
  Matrix a = Matrix::Zero(n_levels, n_levels);
  for (Eigen::Index n = 1; n < n_levels; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return Operator(std::move(a), "a");
}

Operator number_operator(Eigen::Index n_levels) {
  if (n_levels < 2) {
    throw std::invalid_argument("number_operator: need at least 2 Fock levels");
  }
  Matrix n = Matrix::Zero(n_levels, n_levels);
  for (Eigen::Index k = 0; k < n_levels; ++k) n(k, k) = static_cast<double>(k);
  return Operator(std::move(n), "n");
}

Operator pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator(std::move(m), "sx");
}

Operator pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return Operator(std::move(m), "sy");
}

Operator pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator(std::move(m), "sz");
}

Operator sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;  // |1><0|
  return Operator(std::move(m), "s+");
}

Operator sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;  // |0><1|
  return Operator(std::move(m), "s-");
}

Operator kron(const Operator& a, const Operator& b, std::size_t dim_cap) {
  const auto da = static_cast<std::size_t>(a.dim());
  const auto db = static_cast<std::size_t>(b.dim());
  if (db != 0 && da > dim_cap / db) {
    throw std::invalid_argument("kron: product dimension exceeds cap");
  }
  Matrix m = Eigen::kroneckerProduct(a.mat, b.mat);
  return Operator(std::move(m));
}

Operator kron(const std::vector<Operator>& factors, std::size_t dim_cap) {
  if (factors.empty()) throw std::invalid_argument("kron: no factors");
  Operator acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    acc = kron(acc, factors[i], dim_cap);
  }
  return acc;
}

Operator expm(const Operator& h, double t) {
  if (!h.is_hermitian()) {
    throw std::invalid_argument("expm: generator is not hermitian");
  }
  if (t == 0.0) return identity(h.dim());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("expm: eigendecomposition failed");
  }
  const Eigen::VectorXd& w = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases(k) = std::exp(Complex(0, -w(k) * t));
  }
  return Operator(v * phases.asDiagonal() * v.adjoint());
}

double phase_invariant_fidelity(const Operator& u, const Operator& v) {
  if (u.dim() != v.dim()) {
    throw std::invalid_argument("phase_invariant_fidelity: dimension mismatch");
  }
  if (!u.is_unitary(1e-8) || !v.is_unitary(1e-8)) {
    throw std::invalid_argument("phase_invariant_fidelity: input not unitary");
  }
  return std::abs((u.mat.adjoint() * v.mat).trace()) /
         static_cast<double>(u.dim());
}

Matrix closest_unitary(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("closest_unitary: need a square matrix");
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

MakhlinInvariants makhlin_invariants(const Operator& u) {
  if (u.dim() != 4) {
    throw std::invalid_argument("makhlin_invariants: need a 4x4 unitary");
  }
  if (!u.is_unitary(1e-8)) {
    throw std::invalid_argument("makhlin_invariants: input not unitary");
  }
  // Magic (Bell) basis change; columns are maximally entangled states.
  static const Matrix q = [] {
    Matrix m(4, 4);
    const Complex i(0, 1);
    const double s = 1.0 / std::sqrt(2.0);
    m << 1, 0, 0, i,
         0, i, 1, 0,
         0, i, -1, 0,
         1, 0, 0, -i;
    return Matrix(s * m);
  }();
  Matrix ub = q.adjoint() * u.mat * q;
  Matrix m = ub.transpose() * ub;
  const Complex det_u = u.mat.determinant();
  const Complex tr = m.trace();
  const Complex g1 = tr * tr / (16.0 * det_u);
  const Complex g2 = (tr * tr - (m * m).trace()) / (4.0 * det_u);
  return {g1, g2.real()};
}

BlockExtraction extract_block(const Operator& u,
                              const std::vector<Eigen::Index>& keep) {
  if (keep.empty()) throw std::invalid_argument("extract_block: empty index set");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= u.dim()) {
      throw std::invalid_argument("extract_block: index out of range");
    }
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      if (keep[i] == keep[j]) {
        throw std::invalid_argument("extract_block: duplicate index");
      }
    }
  }
  const auto k = static_cast<Eigen::Index>(keep.size());
  Matrix block(k, k);
  double leakage = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    const Vector col = u.mat.col(keep[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < k; ++i) {
      block(i, j) = col(keep[static_cast<std::size_t>(i)]);
    }
    // Amplitude this column sends outside the kept subspace.
    const double out2 = col.squaredNorm() - block.col(j).squaredNorm();
    leakage = std::max(leakage, std::sqrt(std::max(0.0, out2)));
  }
  return {Operator(std::move(block)), leakage};
}

std::uint64_t RandomStream::next_u64() {
  // splitmix64: tiny, well studied, identical everywhere.
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

}  // namespace jqc
