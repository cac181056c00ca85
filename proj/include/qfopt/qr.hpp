#pragma once

#include "qfopt/types.hpp"

namespace qfopt {

// Tick loss rho_tau(u) = u * (tau - 1{u<0}).
double pinball_loss(double u, double tau);

// Mean pinball loss of y - X*b at level tau.
double mean_pinball_loss(const Matrix& X, const Vector& y, const Vector& b, double tau);

struct QrOptions {
  double duality_gap_tol = 1e-8;
  int max_iterations = 200;
  double step_damping = 0.99995;
};

// Exact linear quantile regression: minimizes (1/P) sum rho_tau(y_t - X_t'b)
// by a Frisch-Newton primal-dual interior-point method on the dual LP
//   max { y'a : X'a = (1-tau) X'1, a in [0,1]^P }.
// X must have full column rank with column 0 the constant; P > d required.
QrFit qr_fit(const Matrix& X, const Vector& y, double tau, const QrOptions& opts = {});

}  // namespace qfopt
