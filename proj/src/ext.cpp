#include "qfopt/ext.hpp"

#include "qfopt/detail/bootstrap.hpp"
#include "qfopt/mbb.hpp"
#include "qfopt/mz.hpp"
#include "qfopt/qr.hpp"

namespace qfopt {

namespace {

QrFit fit_amz(const AugmentedSample& sample, int k, int h) {
  const int P = sample.base.P();
  const int q = sample.q();
  Matrix X(P, 2 + q);
  X.col(0).setOnes();
  X.col(1) = sample.base.forecasts[k][h];
  if (q > 0) X.rightCols(q) = sample.z[h];
  QrFit fit = qr_fit(X, sample.base.y, sample.base.levels[k]);
  fit.horizon = sample.base.horizons[h];
  return fit;
}

Vector amz_moments_impl(const AugmentedSample& sample,
                        std::map<ContributionKey, double>* contrib, double* stat) {
  const auto& base = sample.base;
  const int q = sample.q();
  const double P = base.P();
  Vector m((2 + q) * base.K() * base.H());
  Eigen::Index s = 0;
  for (int k = 0; k < base.K(); ++k) {
    for (int h = 0; h < base.H(); ++h) {
      const QrFit fit = fit_amz(sample, k, h);
      m[s] = fit.coefficients[0];
      m[s + 1] = fit.coefficients[1] - 1.0;
      for (int j = 0; j < q; ++j) m[s + 2 + j] = fit.coefficients[2 + j];
      if (contrib) {
        const double cell = P * m.segment(s, 2 + q).squaredNorm();
        (*contrib)[{"0", base.levels[k], base.horizons[h], 0}] = cell;
        *stat += cell;
      }
      s += 2 + q;
    }
  }
  return m;
}

Vector mmz_moments_impl(const MultiSeriesSample& sample,
                        std::map<ContributionKey, double>* contrib, double* stat) {
  const int G = sample.G();
  const auto& first = sample.series.front();
  const double P = first.P();
  Vector m(2 * G * first.K() * first.H());
  Eigen::Index s = 0;
  for (int i = 0; i < G; ++i) {
    const auto& es = sample.series[i];
    const std::string name = sample.names.empty() ? std::to_string(i) : sample.names[i];
    for (int k = 0; k < es.K(); ++k) {
      for (int h = 0; h < es.H(); ++h) {
        const QrFit fit = fit_mz(es, k, h);
        m[s] = fit.coefficients[0];
        m[s + 1] = fit.coefficients[1] - 1.0;
        if (contrib) {
          const double cell = P * m.segment(s, 2).squaredNorm();
          (*contrib)[{name, es.levels[k], es.horizons[h], 0}] = cell;
          *stat += cell;
        }
        s += 2;
      }
    }
  }
  return m;
}

}  // namespace

Vector amz_moment_vector(const AugmentedSample& sample) {
  return amz_moments_impl(sample, nullptr, nullptr);
}

Vector mmz_moment_vector(const MultiSeriesSample& sample) {
  return mmz_moments_impl(sample, nullptr, nullptr);
}

TestResult amz_test(const AugmentedSample& sample, const MbbConfig& cfg) {
  sample.validate();
  const int P = sample.base.P();

  TestResult result;
  result.test = "amz";
  result.statistic = 0.0;
  const Vector m_hat = amz_moments_impl(sample, &result.contributions, &result.statistic);
  result.kappa = static_cast<int>(m_hat.size());
  result.P = P;
  result.config = cfg;

  auto one_draw = [&](std::uint64_t draw_id) {
    const auto indices = draw_block_indices(P, cfg, draw_id);
    const Vector m_b = amz_moment_vector(resample(sample, indices));
    return static_cast<double>(P) * (m_b - m_hat).squaredNorm();
  };
  auto u_boot = detail::run_bootstrap(cfg, one_draw, result.retried_draws, result.diagnostics);
  detail::finalize_result(result, std::move(u_boot));
  return result;
}

TestResult mmz_test(const MultiSeriesSample& sample, const MbbConfig& cfg) {
  sample.validate();
  const int P = sample.series.front().P();

  TestResult result;
  result.test = "mmz";
  result.statistic = 0.0;
  const Vector m_hat = mmz_moments_impl(sample, &result.contributions, &result.statistic);
  result.kappa = static_cast<int>(m_hat.size());
  result.P = P;
  result.config = cfg;

  // The bootstrap statistic scales by sqrt(P), matching the full-sample
  // statistic and the G=1 reduction to the univariate test.
  auto one_draw = [&](std::uint64_t draw_id) {
    const auto indices = draw_block_indices(P, cfg, draw_id);
    const Vector m_b = mmz_moment_vector(resample(sample, indices));
    return static_cast<double>(P) * (m_b - m_hat).squaredNorm();
  };
  auto u_boot = detail::run_bootstrap(cfg, one_draw, result.retried_draws, result.diagnostics);
  detail::finalize_result(result, std::move(u_boot));
  return result;
}

}  // namespace qfopt
