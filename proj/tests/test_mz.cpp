#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qfopt/io.hpp"
#include "qfopt/mbb.hpp"
#include "qfopt/mz.hpp"
#include "qfopt/sim.hpp"

using namespace qfopt;

namespace {

std::vector<std::vector<QrFit>> constant_fits(const EvalSample& s, double alpha, double beta) {
  std::vector<std::vector<QrFit>> fits(s.K());
  for (int k = 0; k < s.K(); ++k) {
    for (int h = 0; h < s.H(); ++h) {
      QrFit f;
      f.coefficients = Vector(2);
      f.coefficients << alpha, beta;
      f.tau = s.levels[k];
      f.horizon = s.horizons[h];
      f.converged = true;
      fits[k].push_back(f);
    }
  }
  return fits;
}

}  // namespace

TEST_CASE("statistic is zero at (0,1) fits and P*(a^2+(b-1)^2) otherwise") {
  const EvalSample s = testutil::make_sample(100, {0.25, 0.5, 0.75}, {1, 2}, 21);
  const auto [u0, c0] = mz_statistic(s, constant_fits(s, 0.0, 1.0));
  CHECK(u0 == doctest::Approx(0.0));
  for (const auto& [key, v] : c0) CHECK(v == doctest::Approx(0.0));

  // alpha=0.1, beta=1.2, P=100: each cell contributes 100*(0.01+0.04)=5.
  const auto [u1, c1] = mz_statistic(s, constant_fits(s, 0.1, 1.2));
  CHECK(u1 == doctest::Approx(5.0 * s.K() * s.H()).epsilon(1e-12));
  for (const auto& [key, v] : c1) CHECK(v == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(static_cast<int>(c1.size()) == s.K() * s.H());
}

TEST_CASE("fit on optimal AR(1) forecasts recovers (0,1)") {
  SimConfig cfg;
  cfg.P = 10000;
  cfg.H = 2;
  cfg.levels = {0.25, 0.5, 0.75};
  CounterRng rng(314, 0);
  const EvalSample s = make_sim_sample(cfg, rng);
  for (int k = 0; k < s.K(); ++k)
    for (int h = 0; h < s.H(); ++h) {
      const QrFit fit = fit_mz(s, k, h);
      CHECK(std::abs(fit.coefficients[0]) < 0.06);
      CHECK(std::abs(fit.coefficients[1] - 1.0) < 0.06);
    }
}

TEST_CASE("moment vector is level-major (alpha, beta-1) pairs") {
  const EvalSample s = testutil::make_sample(150, {0.3, 0.7}, {1, 2}, 57);
  const Vector m = mz_moment_vector(s);
  REQUIRE(m.size() == 2 * s.K() * s.H());
  int pos = 0;
  for (int k = 0; k < s.K(); ++k)
    for (int h = 0; h < s.H(); ++h) {
      const QrFit fit = fit_mz(s, k, h);
      CHECK(m[pos++] == doctest::Approx(fit.coefficients[0]));
      CHECK(m[pos++] == doctest::Approx(fit.coefficients[1] - 1.0));
    }
}

TEST_CASE("mz_test contributions sum to the statistic") {
  const EvalSample s = testutil::make_sample(200, {0.25, 0.5, 0.75}, {1, 2, 3}, 5, 0.9, 0.8);
  MbbConfig cfg;
  cfg.block_length = 4;
  cfg.draws = 200;
  cfg.seed = 12;
  const TestResult r = mz_test(s, cfg);
  double sum = 0.0;
  for (const auto& [key, v] : r.contributions) sum += v;
  CHECK(sum == doctest::Approx(r.statistic).epsilon(1e-9));
  CHECK(r.kappa == 2 * s.K() * s.H());
  CHECK(r.P == 200);
  CHECK(r.test == "mz");
  CHECK(r.critical_values.count(0.90) == 1);
  CHECK(r.critical_values.count(0.95) == 1);
  CHECK(r.critical_values.count(0.99) == 1);
  CHECK(r.critical_values.at(0.90) <= r.critical_values.at(0.95));
  CHECK(r.critical_values.at(0.95) <= r.critical_values.at(0.99));
  CHECK(r.p_value >= 0.0);
  CHECK(r.p_value <= 1.0);
}

TEST_CASE("bootstrap statistic with identity indices is exactly zero") {
  const EvalSample s = testutil::make_sample(60, {0.5}, {1}, 3);
  std::vector<int> identity(60);
  for (int t = 0; t < 60; ++t) identity[t] = t;
  const Vector m_hat = mz_moment_vector(s);
  const Vector m_b = mz_moment_vector(resample(s, identity));
  CHECK((m_b - m_hat).squaredNorm() == doctest::Approx(0.0));
}

TEST_CASE("mz_test is deterministic and thread-count invariant") {
  const EvalSample s = testutil::make_sample(120, {0.25, 0.75}, {1, 2}, 8, 1.1, 1.0);
  MbbConfig cfg;
  cfg.block_length = 6;
  cfg.draws = 300;
  cfg.seed = 777;
  cfg.threads = 1;
  const TestResult r1 = mz_test(s, cfg);
  cfg.threads = 4;
  const TestResult r2 = mz_test(s, cfg);
  CHECK(r1.statistic == r2.statistic);
  CHECK(r1.p_value == r2.p_value);
  CHECK(r1.critical_values == r2.critical_values);
  CHECK(emit_report(r1, "json") == emit_report(r2, "json"));
  CHECK(emit_report(r1, "csv") == emit_report(r2, "csv"));
}

TEST_CASE("warp-speed p-values are approximately uniform under the null") {
  SimConfig cfg;
  cfg.P = 120;
  cfg.H = 2;
  cfg.levels = {0.25, 0.5, 0.75};
  cfg.replications = 600;
  cfg.mbb.block_length = 4;
  cfg.mbb.draws = 1;
  const SizePowerReport rep = run_size_power(cfg, TestKind::Mz, 2024);
  const int M = rep.replications;
  std::vector<double> sorted_boot = rep.bootstrap_statistics;
  std::sort(sorted_boot.begin(), sorted_boot.end());
  std::vector<double> p(M);
  for (int m = 0; m < M; ++m) {
    const auto it =
        std::lower_bound(sorted_boot.begin(), sorted_boot.end(), rep.statistics[m]);
    p[m] = static_cast<double>(sorted_boot.end() - it) / M;
  }
  std::sort(p.begin(), p.end());
  double ks = 0.0;
  for (int i = 0; i < M; ++i) {
    ks = std::max(ks, std::abs(p[i] - static_cast<double>(i) / M));
    ks = std::max(ks, std::abs(p[i] - static_cast<double>(i + 1) / M));
  }
  CHECK(ks < 0.1);
}
