#include <doctest.h>

#include <cmath>

#include "qfopt/sim.hpp"
#include "qfopt/stats.hpp"

using namespace qfopt;

namespace {

double lag1_autocorr(const Vector& y) {
  const double mean = y.mean();
  double num = 0.0, den = 0.0;
  for (int t = 0; t < y.size(); ++t) {
    const double d = y[t] - mean;
    den += d * d;
    if (t > 0) num += d * (y[t - 1] - mean);
  }
  return num / den;
}

}  // namespace

TEST_CASE("ar1 with b=0 is iid standard normal") {
  CounterRng rng(1, 0);
  const Vector y = simulate_ar1(0.0, 100000, rng);
  CHECK(std::abs(y.mean()) < 0.02);
  CHECK(y.squaredNorm() / y.size() == doctest::Approx(1.0).epsilon(0.03));
  CHECK(std::abs(lag1_autocorr(y)) < 0.01);
}

TEST_CASE("ar1 with b=0.6 has unit variance and matching autocorrelation") {
  CounterRng rng(2, 0);
  const Vector y = simulate_ar1(0.6, 200000, rng);
  CHECK(y.squaredNorm() / y.size() == doctest::Approx(1.0).epsilon(0.03));
  CHECK(lag1_autocorr(y) == doctest::Approx(0.6).epsilon(1.0 / 60.0));  // +-0.01
}

TEST_CASE("ar1 paths are reproducible per stream") {
  CounterRng a(5, 7), b(5, 7), c(5, 8);
  const Vector y1 = simulate_ar1(0.6, 50, a);
  const Vector y2 = simulate_ar1(0.6, 50, b);
  const Vector y3 = simulate_ar1(0.6, 50, c);
  CHECK((y1 - y2).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK((y1 - y3).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("ar1 quantile forecasts") {
  CounterRng rng(3, 0);
  const Vector y = simulate_ar1(0.6, 100, rng);
  // tau = 0.5: the median forecast is b~^h y_t.
  const Vector med = ar1_quantile_forecasts(y, 0.6, 2, 0.5);
  for (int t = 0; t + 2 < 100; ++t) CHECK(med[t] == doctest::Approx(0.36 * y[t]).epsilon(1e-12));
  // b~ = 0: the forecast is the constant unconditional quantile.
  const Vector flat = ar1_quantile_forecasts(y, 0.0, 1, 0.25);
  for (int t = 0; t + 1 < 100; ++t)
    CHECK(flat[t] == doctest::Approx(normal_quantile(0.25)).epsilon(1e-12));
  // Long horizons approach the unconditional quantile.
  const Vector far = ar1_quantile_forecasts(y, 0.6, 40, 0.9);
  for (int t = 0; t + 40 < 100; ++t)
    CHECK(far[t] == doctest::Approx(normal_quantile(0.9)).epsilon(1e-6));
}

TEST_CASE("adl with c=0 has AR(1) moments") {
  CounterRng rng(4, 0);
  const AdlPath path = simulate_adl(0.6, 0.0, 0.6, 150000, rng);
  CHECK(path.y.squaredNorm() / path.y.size() == doctest::Approx(1.0).epsilon(0.03));
  CHECK(lag1_autocorr(path.y) == doctest::Approx(0.6).epsilon(1.0 / 40.0));
  CHECK(path.z.squaredNorm() / path.z.size() == doctest::Approx(1.0).epsilon(0.03));
  CHECK(lag1_autocorr(path.z) == doctest::Approx(0.6).epsilon(1.0 / 40.0));
}

TEST_CASE("adl projection coefficient of y on its own lag is about 0.728") {
  CounterRng rng(6, 0);
  const double b = 0.6, c = 0.5, d = 0.6;
  const AdlPath path = simulate_adl(b, c, d, 300000, rng);
  // OLS slope of y_t on y_{t-1}; the omitted z lag loads onto it. The
  // analytic value is b + c*Cov(y,z)/Var(y) with Cov(y,z) = cd/(1-bd) and
  // Var(y) = 1 + (c^2 + 2bc Cov(y,z))/(1-b^2), about 0.728 here.
  const double cov_yz = c * d / (1.0 - b * d);
  const double var_y = 1.0 + (c * c + 2.0 * b * c * cov_yz) / (1.0 - b * b);
  const double analytic = b + c * cov_yz / var_y;
  const int n = static_cast<int>(path.y.size());
  double num = 0.0, den = 0.0;
  for (int t = 1; t < n; ++t) {
    num += path.y[t] * path.y[t - 1];
    den += path.y[t - 1] * path.y[t - 1];
  }
  CHECK(num / den == doctest::Approx(analytic).epsilon(0.01));
}

TEST_CASE("garch with b2=b3=0 is iid with variance b1") {
  CounterRng rng(7, 0);
  const GarchPath path = simulate_garch({0.0, 0.25, 0.0, 0.0}, 30.0, 100000, rng);
  CHECK(std::abs(path.y.mean()) < 0.01);
  CHECK(path.y.squaredNorm() / path.y.size() == doctest::Approx(0.25).epsilon(0.05));
  CHECK(std::abs(lag1_autocorr(path.y)) < 0.01);
  for (int t = 0; t < path.sigma2.size(); ++t)
    CHECK(path.sigma2[t] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("garch unconditional variance matches b1/(1-b2-b3)") {
  CounterRng rng(8, 0);
  const GarchPath path = simulate_garch({0.0, 0.05, 0.1, 0.85}, 30.0, 400000, rng);
  CHECK(path.y.squaredNorm() / path.y.size() == doctest::Approx(1.0).epsilon(0.06));
  CHECK(path.sigma2.mean() == doctest::Approx(1.0).epsilon(0.06));
  CHECK(path.sigma2.minCoeff() > 0.0);
}

TEST_CASE("standardized t quantile") {
  CHECK(standardized_t_quantile(0.5, 30.0) == doctest::Approx(0.0));
  const double scale = std::sqrt(28.0 / 30.0);
  CHECK(standardized_t_quantile(0.05, 30.0) ==
        doctest::Approx(scale * student_t_quantile(0.05, 30.0)).epsilon(1e-12));
  // Lighter tails than the raw t, heavier than the normal in the far tail.
  CHECK(standardized_t_quantile(0.01, 30.0) < normal_quantile(0.01));
}

TEST_CASE("sim samples have the declared shape") {
  SimConfig cfg;
  cfg.P = 120;
  cfg.H = 4;
  cfg.levels = {0.25, 0.5, 0.75};
  CounterRng rng(9, 0);
  const EvalSample s = make_sim_sample(cfg, rng);
  CHECK(s.P() == 120);
  CHECK(s.K() == 3);
  CHECK(s.H() == 4);
  s.validate();

  SimConfig g;
  g.dgp = DgpFamily::Garch11;
  g.P = 200;
  g.H = 1;
  g.levels = {0.01, 0.025, 0.05};
  g.mbb.block_length = 10;
  CounterRng rng2(10, 0);
  const EvalSample gs = make_sim_sample(g, rng2);
  CHECK(gs.P() == 200);
  CHECK(gs.H() == 1);
  gs.validate();
}

TEST_CASE("horizon swap relabels the h=1 and h=H forecast slices") {
  SimConfig cfg;
  cfg.P = 50;
  cfg.H = 3;
  cfg.levels = {0.5};
  SimConfig swapped = cfg;
  swapped.swap_horizons = true;
  CounterRng r1(11, 0), r2(11, 0);
  const EvalSample a = make_sim_sample(cfg, r1);
  const EvalSample b = make_sim_sample(swapped, r2);
  CHECK((a.forecasts[0][0] - b.forecasts[0][2]).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK((a.forecasts[0][2] - b.forecasts[0][0]).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK((a.forecasts[0][1] - b.forecasts[0][1]).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK((a.y - b.y).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("warp-speed harness is deterministic and thread invariant") {
  SimConfig cfg;
  cfg.P = 60;
  cfg.H = 2;
  cfg.levels = {0.25, 0.75};
  cfg.replications = 120;
  cfg.mbb.block_length = 4;
  cfg.mbb.threads = 1;
  const SizePowerReport r1 = run_size_power(cfg, TestKind::Mz, 33);
  cfg.mbb.threads = 4;
  const SizePowerReport r2 = run_size_power(cfg, TestKind::Mz, 33);
  CHECK(r1.rejection_rate == r2.rejection_rate);
  CHECK(r1.critical_value == r2.critical_value);
  CHECK(r1.statistics == r2.statistics);
  CHECK(r1.bootstrap_statistics == r2.bootstrap_statistics);
  const SizePowerReport r3 = run_size_power(cfg, TestKind::Mz, 34);
  CHECK(r1.statistics != r3.statistics);
}

TEST_CASE("config validation") {
  SimConfig cfg;
  cfg.P = 5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SimConfig{};
  cfg.b = 1.2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SimConfig{};
  cfg.dgp = DgpFamily::Garch11;
  cfg.H = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SimConfig{};
  cfg.dgp = DgpFamily::Garch11;
  cfg.H = 1;
  cfg.garch_b = {0.0, 0.05, 0.6, 0.5};  // b2+b3 >= 1
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
