#include "qfopt/mz.hpp"

#include "qfopt/detail/bootstrap.hpp"
#include "qfopt/mbb.hpp"

namespace qfopt {

QrFit fit_mz(const EvalSample& sample, int k, int h) {
  const int P = sample.P();
  Matrix X(P, 2);
  X.col(0).setOnes();
  X.col(1) = sample.forecasts[k][h];
  QrFit fit = qr_fit(X, sample.y, sample.levels[k]);
  fit.horizon = sample.horizons[h];
  return fit;
}

std::pair<double, std::map<ContributionKey, double>> mz_statistic(
    const EvalSample& sample, const std::vector<std::vector<QrFit>>& fits) {
  const double P = sample.P();
  double stat = 0.0;
  std::map<ContributionKey, double> contrib;
  for (int k = 0; k < sample.K(); ++k) {
    for (int h = 0; h < sample.H(); ++h) {
      const auto& f = fits[k][h];
      const double a = f.coefficients[0];
      const double b1 = f.coefficients[1] - 1.0;
      const double cell = P * (a * a + b1 * b1);
      contrib[{"0", sample.levels[k], sample.horizons[h], 0}] = cell;
      stat += cell;
    }
  }
  return {stat, contrib};
}

Vector mz_moment_vector(const EvalSample& sample) {
  Vector m(2 * sample.K() * sample.H());
  Eigen::Index s = 0;
  for (int k = 0; k < sample.K(); ++k) {
    for (int h = 0; h < sample.H(); ++h) {
      const QrFit fit = fit_mz(sample, k, h);
      m[s++] = fit.coefficients[0];
      m[s++] = fit.coefficients[1] - 1.0;
    }
  }
  return m;
}

TestResult mz_test(const EvalSample& sample, const MbbConfig& cfg) {
  sample.validate();
  const int P = sample.P();

  std::vector<std::vector<QrFit>> fits(sample.K(), std::vector<QrFit>(sample.H()));
  Vector m_hat(2 * sample.K() * sample.H());
  Eigen::Index s = 0;
  for (int k = 0; k < sample.K(); ++k) {
    for (int h = 0; h < sample.H(); ++h) {
      fits[k][h] = fit_mz(sample, k, h);
      m_hat[s++] = fits[k][h].coefficients[0];
      m_hat[s++] = fits[k][h].coefficients[1] - 1.0;
    }
  }

  TestResult result;
  result.test = "mz";
  std::tie(result.statistic, result.contributions) = mz_statistic(sample, fits);
  result.kappa = static_cast<int>(m_hat.size());
  result.P = P;
  result.config = cfg;

  auto one_draw = [&](std::uint64_t draw_id) {
    const auto indices = draw_block_indices(P, cfg, draw_id);
    const Vector m_b = mz_moment_vector(resample(sample, indices));
    return static_cast<double>(P) * (m_b - m_hat).squaredNorm();
  };
  auto u_boot = detail::run_bootstrap(cfg, one_draw, result.retried_draws, result.diagnostics);
  detail::finalize_result(result, std::move(u_boot));
  return result;
}

}  // namespace qfopt
