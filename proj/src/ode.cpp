#include "jqc/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jqc {

namespace {

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights, applied to k1..k7.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

Matrix integrate_ode(const std::function<Matrix(double, const Matrix&)>& rhs,
                     Matrix y, double t0, double t1, const OdeOptions& opts) {
  if (!(t1 > t0)) throw std::invalid_argument("integrate_ode: need t1 > t0");
  if (!(opts.tol > 0)) throw std::invalid_argument("integrate_ode: tol > 0");
  const double span = t1 - t0;
  const double h_min = span * opts.min_step_fraction;
  double t = t0;
  double h = span * opts.first_step_fraction;
  Matrix k1 = rhs(t, y);
  while (t < t1) {
    h = std::min(h, t1 - t);
    if (h < h_min) throw std::runtime_error("integrate_ode: step underflow");
    const Matrix k2 = rhs(t + c2 * h, y + h * (a21 * k1));
    const Matrix k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Matrix k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Matrix k5 =
        rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Matrix k6 = rhs(
        t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Matrix y5 =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Matrix k7 = rhs(t + h, y5);  // FSAL
    const double err =
        (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7))
            .cwiseAbs()
            .maxCoeff();
    // Per-unit-time budget keeps the global error near tol.
    const double allowed = opts.tol * (h / span) + 1e-300;
    const double ratio = err / allowed;
    if (ratio <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;
    }
    const double factor =
        std::clamp(0.9 * std::pow(std::max(ratio, 1e-10), -0.2), 0.2, 5.0);
    h *= factor;
  }
  return y;
}

StateVector integrate_tdse(const std::function<Matrix(double)>& h_of_t,
                           const StateVector& psi0, double t0, double t1,
                           double tol) {
  const Matrix h_first = h_of_t(t0);
  if ((h_first - h_first.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("integrate_tdse: H(t0) is not hermitian");
  }
  if (h_first.rows() != psi0.dim()) {
    throw std::invalid_argument("integrate_tdse: H/state dimension mismatch");
  }
  const Complex mi(0, -1);
  auto rhs = [&h_of_t, mi](double t, const Matrix& y) -> Matrix {
    return mi * (h_of_t(t) * y);
  };
  OdeOptions opts;
  opts.tol = tol;
  Matrix out = integrate_ode(rhs, psi0.amps, t0, t1, opts);
  return StateVector(Vector(out.col(0)));
}

Operator integrate_propagator(const std::function<Matrix(double)>& h_of_t,
                              Eigen::Index dim, double t0, double t1,
                              double tol) {
  const Matrix h_first = h_of_t(t0);
  if (h_first.rows() != dim || h_first.cols() != dim) {
    throw std::invalid_argument("integrate_propagator: dimension mismatch");
  }
  if ((h_first - h_first.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("integrate_propagator: H(t0) is not hermitian");
  }
  const Complex mi(0, -1);
  auto rhs = [&h_of_t, mi](double t, const Matrix& y) -> Matrix {
    return mi * (h_of_t(t) * y);
  };
  OdeOptions opts;
  opts.tol = tol;
  Matrix u = integrate_ode(rhs, Matrix::Identity(dim, dim), t0, t1, opts);
  return Operator(std::move(u));
}

}  // namespace jqc
