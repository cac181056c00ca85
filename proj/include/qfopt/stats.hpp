#pragma once

namespace qfopt {

// Standard normal CDF and its inverse. The inverse uses the Acklam rational
// approximation refined by one Halley step; max abs error well below 1e-12
// on (0,1).
double normal_cdf(double x);
double normal_quantile(double p);

// Student-t CDF and quantile with nu > 0 degrees of freedom. The quantile
// inverts the regularized incomplete beta by Newton iteration with a
// bisection safeguard.
double student_t_cdf(double x, double nu);
double student_t_quantile(double p, double nu);

// Regularized incomplete beta I_x(a,b) via continued fraction (Lentz).
double incomplete_beta(double a, double b, double x);

}  // namespace qfopt
