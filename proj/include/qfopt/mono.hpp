#pragma once

#include "qfopt/types.hpp"

namespace qfopt {

// Panel of per-period loss differences. Row s indexes a (tau_k, h_i, h_j)
// triple with h_i < h_j; entry (s,t) is the longer-horizon loss minus the
// shorter-horizon loss, so the monotonicity null is E[row mean] >= 0.
struct LossDiffPanel {
  Matrix data;  // kappa x P
  std::vector<ContributionKey> keys;  // h = shorter horizon, h2 = longer
  int kappa() const { return static_cast<int>(data.rows()); }
  int P() const { return static_cast<int>(data.cols()); }
};

LossDiffPanel loss_differences(const EvalSample& sample);

// Concatenates per-series panels for the multivariate extension.
LossDiffPanel loss_differences(const MultiSeriesSample& sample);

// Bartlett-kernel long-run variance, weights 1 - |k|/(s_T+1), normalized by
// P. Clipped at zero if numerically negative.
double hac_variance(const Vector& series, const HacConfig& cfg);

// Horizon-monotonicity test: one-sided moment-inequality statistic with HAC
// studentization, GMS moment selection, and block-bootstrap variance.
TestResult mh_test(const EvalSample& sample, const MbbConfig& cfg, const HacConfig& hac);
TestResult mh_test(const MultiSeriesSample& sample, const MbbConfig& cfg, const HacConfig& hac);
TestResult mh_test_panel(const LossDiffPanel& panel, const MbbConfig& cfg, const HacConfig& hac);

// Full-sample side of the monotonicity statistic: moment means, HAC standard
// deviations, the statistic, and the GMS selection. Shared by mh_test and
// the warp-speed Monte Carlo harness.
struct MhParts {
  Vector m_bar;
  Vector sigma;                 // HAC standard deviations (0 marks a dropped moment)
  std::vector<bool> selected;   // GMS screen per moment
  double statistic = 0.0;
  std::vector<int> dropped;     // moments excluded for zero variance
};
MhParts mh_prepare(const LossDiffPanel& panel, const HacConfig& hac);

// One bootstrap statistic for a given index draw, using the blocked variance
// estimator over consecutive length-l chunks of the drawn index vector.
double mh_bootstrap_statistic(const LossDiffPanel& panel, const MhParts& parts,
                              const std::vector<int>& indices, int block_length);

}  // namespace qfopt
