#include "qfopt/qr.hpp"

#include <cmath>

namespace qfopt {

double pinball_loss(double u, double tau) {
  if (!std::isfinite(u)) throw ConfigError("pinball_loss: residual not finite");
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("pinball_loss: tau outside (0,1)");
  return u * (tau - (u < 0.0 ? 1.0 : 0.0));
}

double mean_pinball_loss(const Matrix& X, const Vector& y, const Vector& b, double tau) {
  const Vector r = y - X * b;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) acc += pinball_loss(r[i], tau);
  return acc / static_cast<double>(r.size());
}

namespace {

constexpr double kBig = 1e20;

struct LpState {
  Vector y;       // dual iterate of length d; coefficients are -y
  double gap;
  int iterations;
};

// Frisch-Newton solver for min c'x s.t. Ax = rhs, 0 <= x <= 1 (Mehrotra
// predictor-corrector); the classic rqfnb routine. A is d x n.
LpState lpfnb(const Matrix& A, const Vector& rhs, const Vector& c, Vector x,
              double beta, double eps, int maxit) {
  const auto n = A.cols();
  const auto p = A.rows();

  Vector d = Vector::Ones(n);
  Vector y = A * c;
  Eigen::LLT<Matrix> llt;

  auto solve_ada = [&](Vector& v) {
    Matrix ada = A * d.asDiagonal() * A.transpose();
    llt.compute(ada);
    v = llt.solve(v).eval();
  };
  solve_ada(y);

  Vector s = c - A.transpose() * y;
  Vector z(n), w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::fabs(s[i]) < eps) {
      z[i] = std::max(s[i], 0.0) + eps;
      w[i] = std::max(-s[i], 0.0) + eps;
    } else {
      z[i] = std::max(s[i], 0.0);
      w[i] = std::max(-s[i], 0.0);
    }
    s[i] = 1.0 - x[i];
  }

  double gap = z.dot(x) + w.dot(s);
  Vector dx(n), ds(n), dz(n), dw(n), dr(n), u(n);
  Vector dy(p), rhs_res(p);
  int it = 0;

  while (gap > eps && it < maxit) {
    ++it;
    for (Eigen::Index i = 0; i < n; ++i) {
      d[i] = 1.0 / (z[i] / x[i] + w[i] / s[i]);
      ds[i] = z[i] - w[i];
      dz[i] = d[i] * ds[i];
    }
    dy = rhs - A * x + A * dz;
    rhs_res = dy;
    solve_ada(dy);
    ds = A.transpose() * dy - ds;

    double deltap = kBig, deltad = kBig;
    for (Eigen::Index i = 0; i < n; ++i) {
      dx[i] = d[i] * ds[i];
      ds[i] = -dx[i];
      dz[i] = -z[i] * (dx[i] / x[i] + 1.0);
      dw[i] = -w[i] * (ds[i] / s[i] + 1.0);
      if (dx[i] < 0) deltap = std::min(deltap, -x[i] / dx[i]);
      if (ds[i] < 0) deltap = std::min(deltap, -s[i] / ds[i]);
      if (dz[i] < 0) deltad = std::min(deltad, -z[i] / dz[i]);
      if (dw[i] < 0) deltad = std::min(deltad, -w[i] / dw[i]);
    }
    deltap = std::min(beta * deltap, 1.0);
    deltad = std::min(beta * deltad, 1.0);

    if (std::min(deltap, deltad) < 1.0) {
      // Corrector step with Mehrotra's centering parameter.
      double mu = z.dot(x) + w.dot(s);
      const double g = mu + deltap * dx.dot(z) + deltad * dz.dot(x) +
                       deltap * deltad * dx.dot(dz) + deltap * ds.dot(w) +
                       deltad * dw.dot(s) + deltap * deltad * ds.dot(dw);
      mu = mu * std::pow(g / mu, 3) / (2.0 * static_cast<double>(n));
      for (Eigen::Index i = 0; i < n; ++i) {
        dr[i] = d[i] * (mu * (1.0 / s[i] - 1.0 / x[i]) + dx[i] * dz[i] / x[i] -
                        ds[i] * dw[i] / s[i]);
      }
      dy = rhs_res + A * dr;
      dy = llt.solve(dy).eval();
      u = A.transpose() * dy;
      deltap = kBig;
      deltad = kBig;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double dxdz = dx[i] * dz[i];
        const double dsdw = ds[i] * dw[i];
        dx[i] = d[i] * (u[i] - z[i] + w[i]) - dr[i];
        ds[i] = -dx[i];
        dz[i] = -z[i] + (mu - z[i] * dx[i] - dxdz) / x[i];
        dw[i] = -w[i] + (mu - w[i] * ds[i] - dsdw) / s[i];
        if (dx[i] < 0) deltap = std::min(deltap, -x[i] / dx[i]);
        if (ds[i] < 0) deltap = std::min(deltap, -s[i] / ds[i]);
        if (dz[i] < 0) deltad = std::min(deltad, -z[i] / dz[i]);
        if (dw[i] < 0) deltad = std::min(deltad, -w[i] / dw[i]);
      }
      deltap = std::min(beta * deltap, 1.0);
      deltad = std::min(beta * deltad, 1.0);
    }

    x += deltap * dx;
    s += deltap * ds;
    y += deltad * dy;
    z += deltad * dz;
    w += deltad * dw;
    gap = z.dot(x) + w.dot(s);
  }
  return {y, gap, it};
}

}  // namespace

QrFit qr_fit(const Matrix& X, const Vector& y, double tau, const QrOptions& opts) {
  const auto n = X.rows();
  const auto d = X.cols();
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("qr_fit: tau outside (0,1)");
  if (y.size() != n) throw ConfigError("qr_fit: X and y dimensions do not match");
  if (n <= d) throw ConfigError("qr_fit: need more observations than regressors");
  if (!X.allFinite() || !y.allFinite()) throw ConfigError("qr_fit: non-finite input");

  Eigen::ColPivHouseholderQR<Matrix> dec(X);
  dec.setThreshold(1e-10);
  if (dec.rank() < d) {
    throw SingularDesignError("qr_fit: design matrix is rank deficient");
  }

  const Matrix A = X.transpose();
  const Vector rhs = (1.0 - tau) * (A * Vector::Ones(n));
  const Vector c = -y;
  const Vector x0 = Vector::Constant(n, 1.0 - tau);

  const LpState st =
      lpfnb(A, rhs, c, x0, opts.step_damping, opts.duality_gap_tol, opts.max_iterations);
  const Vector coef = -st.y;

  if (st.gap > opts.duality_gap_tol) {
    throw ConvergenceError("qr_fit: interior-point iteration cap reached", coef, st.gap);
  }

  QrFit fit;
  fit.coefficients = coef;
  fit.tau = tau;
  fit.objective = mean_pinball_loss(X, y, coef, tau);
  fit.converged = true;
  fit.iterations = st.iterations;
  return fit;
}

}  // namespace qfopt
