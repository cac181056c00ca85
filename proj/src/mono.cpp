#include "qfopt/mono.hpp"

#include <cmath>

#include "qfopt/detail/bootstrap.hpp"
#include "qfopt/mbb.hpp"
#include "qfopt/qr.hpp"

namespace qfopt {

namespace {

void fill_panel_rows(const EvalSample& sample, const std::string& name,
                     LossDiffPanel& panel, int& row) {
  const int P = sample.P();
  for (int k = 0; k < sample.K(); ++k) {
    const double tau = sample.levels[k];
    for (int i = 0; i < sample.H(); ++i) {
      for (int j = i + 1; j < sample.H(); ++j) {
        for (int t = 0; t < P; ++t) {
          const double longer = pinball_loss(sample.y[t] - sample.forecasts[k][j][t], tau);
          const double shorter = pinball_loss(sample.y[t] - sample.forecasts[k][i][t], tau);
          panel.data(row, t) = longer - shorter;
        }
        panel.keys.push_back({name, tau, sample.horizons[i], sample.horizons[j]});
        ++row;
      }
    }
  }
}

}  // namespace

LossDiffPanel loss_differences(const EvalSample& sample) {
  sample.validate();
  if (sample.H() < 2) throw ConfigError("monotonicity test: need at least two horizons");
  LossDiffPanel panel;
  const int kappa = sample.K() * sample.H() * (sample.H() - 1) / 2;
  panel.data.resize(kappa, sample.P());
  int row = 0;
  fill_panel_rows(sample, "0", panel, row);
  return panel;
}

LossDiffPanel loss_differences(const MultiSeriesSample& sample) {
  sample.validate();
  const auto& first = sample.series.front();
  if (first.H() < 2) throw ConfigError("monotonicity test: need at least two horizons");
  LossDiffPanel panel;
  const int per_series = first.K() * first.H() * (first.H() - 1) / 2;
  panel.data.resize(per_series * sample.G(), first.P());
  int row = 0;
  for (int i = 0; i < sample.G(); ++i) {
    const std::string name = sample.names.empty() ? std::to_string(i) : sample.names[i];
    fill_panel_rows(sample.series[i], name, panel, row);
  }
  return panel;
}

double hac_variance(const Vector& series, const HacConfig& cfg) {
  const int P = static_cast<int>(series.size());
  const int band = cfg.bandwidth;
  if (band < 0) throw ConfigError("hac: bandwidth must be nonnegative");
  if (P <= 2 * band) throw ConfigError("hac: bandwidth too large for sample");
  const Vector x = series.array() - series.mean();
  double acc = x.squaredNorm() / P;
  for (int k = 1; k <= band; ++k) {
    const double gamma = x.head(P - k).dot(x.tail(P - k)) / P;
    acc += 2.0 * (1.0 - static_cast<double>(k) / (band + 1)) * gamma;
  }
  return acc > 0.0 ? acc : 0.0;
}

MhParts mh_prepare(const LossDiffPanel& panel, const HacConfig& hac) {
  const int P = panel.P();
  const int kappa = panel.kappa();
  if (P < 16) throw ConfigError("monotonicity test: need P >= 16");
  const double sqrtP = std::sqrt(static_cast<double>(P));
  const double gms_threshold = std::sqrt(2.0 * std::log(std::log(static_cast<double>(P))) / P);

  MhParts parts;
  parts.m_bar.resize(kappa);
  parts.sigma.resize(kappa);
  parts.selected.assign(kappa, false);
  for (int s = 0; s < kappa; ++s) {
    parts.m_bar[s] = panel.data.row(s).mean();
    parts.sigma[s] = std::sqrt(hac_variance(panel.data.row(s).transpose(), hac));
    if (parts.sigma[s] <= 0.0) {
      parts.dropped.push_back(s);
      continue;
    }
    const double standardized = sqrtP * parts.m_bar[s] / parts.sigma[s];
    const double neg = standardized < 0.0 ? standardized : 0.0;
    parts.statistic += neg * neg;
    parts.selected[s] = (parts.m_bar[s] / parts.sigma[s] <= gms_threshold);
  }
  return parts;
}

double mh_bootstrap_statistic(const LossDiffPanel& panel, const MhParts& parts,
                              const std::vector<int>& indices, int block_length) {
  const int P = panel.P();
  const double sqrtP = std::sqrt(static_cast<double>(P));
  double u = 0.0;
  for (int s = 0; s < panel.kappa(); ++s) {
    if (parts.sigma[s] <= 0.0 || !parts.selected[s]) continue;
    double mb = 0.0;
    for (int t = 0; t < P; ++t) mb += panel.data(s, indices[t]);
    mb /= P;
    // Blocked variance estimator: average over drawn blocks of the squared
    // within-block deviation sum, each scaled by its length.
    double var_b = 0.0;
    int n_blocks = 0;
    for (int start = 0; start < P; start += block_length) {
      const int len = std::min(block_length, P - start);
      double dev = 0.0;
      for (int t = start; t < start + len; ++t) dev += panel.data(s, indices[t]) - mb;
      var_b += dev * dev / len;
      ++n_blocks;
    }
    var_b /= n_blocks;
    if (var_b <= 0.0) continue;
    const double standardized = sqrtP * (mb - parts.m_bar[s]) / std::sqrt(var_b);
    const double neg = standardized < 0.0 ? standardized : 0.0;
    u += neg * neg;
  }
  return u;
}

TestResult mh_test_panel(const LossDiffPanel& panel, const MbbConfig& cfg,
                         const HacConfig& hac) {
  const int P = panel.P();
  const double sqrtP = std::sqrt(static_cast<double>(P));

  const MhParts parts = mh_prepare(panel, hac);

  TestResult result;
  result.test = "mh";
  result.P = P;
  result.config = cfg;
  result.kappa = panel.kappa();
  result.statistic = parts.statistic;
  for (int s = 0; s < panel.kappa(); ++s) {
    if (parts.sigma[s] <= 0.0) continue;
    const double standardized = sqrtP * parts.m_bar[s] / parts.sigma[s];
    const double neg = standardized < 0.0 ? standardized : 0.0;
    result.contributions[panel.keys[s]] = neg * neg;
  }
  for (int s : parts.dropped) {
    result.diagnostics.push_back("moment " + std::to_string(s) +
                                 " excluded: zero long-run variance");
  }

  auto one_draw = [&](std::uint64_t draw_id) {
    const auto idx = draw_block_indices(P, cfg, draw_id);
    return mh_bootstrap_statistic(panel, parts, idx, cfg.block_length);
  };
  auto u_boot = detail::run_bootstrap(cfg, one_draw, result.retried_draws, result.diagnostics);
  detail::finalize_result(result, std::move(u_boot));
  return result;
}

TestResult mh_test(const EvalSample& sample, const MbbConfig& cfg, const HacConfig& hac) {
  return mh_test_panel(loss_differences(sample), cfg, hac);
}

TestResult mh_test(const MultiSeriesSample& sample, const MbbConfig& cfg, const HacConfig& hac) {
  return mh_test_panel(loss_differences(sample), cfg, hac);
}

}  // namespace qfopt
