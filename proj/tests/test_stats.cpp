#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "qfopt/stats.hpp"

using namespace qfopt;

namespace {

// Bisection inverse of a CDF, used as the oracle for the closed-form
// quantile implementations.
template <typename Cdf>
double bisect_quantile(Cdf cdf, double p, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("normal cdf fixed points") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-10));
  CHECK(normal_cdf(-1.959963984540054) == doctest::Approx(0.025).epsilon(1e-10));
}

TEST_CASE("normal quantile matches bisection oracle to 1e-9") {
  double worst = 0.0;
  for (double p = 0.001; p < 0.9995; p += 0.001) {
    const double q = normal_quantile(p);
    const double oracle = bisect_quantile([](double x) { return normal_cdf(x); }, p, -10.0, 10.0);
    worst = std::max(worst, std::abs(q - oracle));
  }
  CHECK(worst < 1e-9);
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-10));
}

TEST_CASE("student t cdf symmetry and tails") {
  for (double nu : {1.0, 5.0, 30.0}) {
    CHECK(student_t_cdf(0.0, nu) == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : {0.3, 1.0, 2.5}) {
      CHECK(student_t_cdf(-x, nu) == doctest::Approx(1.0 - student_t_cdf(x, nu)).epsilon(1e-12));
    }
  }
  // Cauchy special case: F(x) = 1/2 + atan(x)/pi.
  CHECK(student_t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-10));
  // Large nu approaches the normal.
  CHECK(student_t_cdf(1.96, 1e6) == doctest::Approx(normal_cdf(1.96)).epsilon(1e-5));
}

TEST_CASE("student t quantile matches bisection oracle to 1e-9") {
  for (double nu : {3.0, 10.0, 30.0}) {
    double worst = 0.0;
    for (double p = 0.001; p < 0.9995; p += 0.0025) {
      const double q = student_t_quantile(p, nu);
      const double oracle =
          bisect_quantile([nu](double x) { return student_t_cdf(x, nu); }, p, -200.0, 200.0);
      worst = std::max(worst, std::abs(q - oracle));
    }
    CHECK(worst < 1e-9);
    CHECK(student_t_cdf(student_t_quantile(0.31, nu), nu) == doctest::Approx(0.31).epsilon(1e-10));
  }
  CHECK(student_t_quantile(0.5, 7.0) == doctest::Approx(0.0).epsilon(1e-12));
  // t(1) quantiles are tan(pi (p - 1/2)).
  CHECK(student_t_quantile(0.75, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("incomplete beta endpoints and symmetry") {
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == doctest::Approx(0.0));
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == doctest::Approx(1.0));
  // I_x(1,1) = x.
  CHECK(incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
  // I_x(a,b) = 1 - I_{1-x}(b,a).
  CHECK(incomplete_beta(2.5, 4.0, 0.3) ==
        doctest::Approx(1.0 - incomplete_beta(4.0, 2.5, 0.7)).epsilon(1e-12));
}
