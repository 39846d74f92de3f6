#pragma once

#include <functional>

#include "jqc/operator_core.hpp"

// Adaptive Dormand-Prince 5(4) integration for Schrodinger-picture dynamics.
// The local error is budgeted per unit time (allowed step error =
// tol * h / span), so the accumulated error over the whole window is of
// order tol.  Norm is never renormalized mid-run: drift is a diagnostic.

namespace jqc {

struct OdeOptions {
  double tol = 1e-10;
  // Initial step as a fraction of the span; adapted immediately.
  double first_step_fraction = 1e-2;
  // Steps below span * min_step_fraction abort with std::runtime_error.
  double min_step_fraction = 1e-14;
};

// y' = rhs(t, y) from t0 to t1 (t1 > t0).  Matrices integrate column-wise
// exactly like vectors; a Vector is handled as an n-by-1 matrix.
Matrix integrate_ode(const std::function<Matrix(double, const Matrix&)>& rhs,
                     Matrix y0, double t0, double t1,
                     const OdeOptions& opts = {});

// i psi' = H(t) psi.  The callback returns the (hermitian) Hamiltonian at t;
// hermiticity is checked on the first evaluation only.
StateVector integrate_tdse(const std::function<Matrix(double)>& h_of_t,
                           const StateVector& psi0, double t0, double t1,
                           double tol = 1e-10);

// Full propagator U(t1, t0) for i U' = H(t) U, U(t0) = 1.
Operator integrate_propagator(const std::function<Matrix(double)>& h_of_t,
                              Eigen::Index dim, double t0, double t1,
                              double tol = 1e-10);

}  // namespace jqc
