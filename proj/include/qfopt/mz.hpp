#pragma once

#include <utility>

#include "qfopt/qr.hpp"
#include "qfopt/types.hpp"

namespace qfopt {

// Quantile regression of y on (1, forecast slice) at level k, horizon index h.
QrFit fit_mz(const EvalSample& sample, int k, int h);

// U = sum_s P * m_s^2 with m_s in {alpha_hat, beta_hat - 1}, plus the
// per-(tau,h) contribution table.
std::pair<double, std::map<ContributionKey, double>> mz_statistic(
    const EvalSample& sample, const std::vector<std::vector<QrFit>>& fits);

// Multi-horizon, multi-quantile Mincer-Zarnowitz autocalibration test with
// moving-block-bootstrap critical values.
TestResult mz_test(const EvalSample& sample, const MbbConfig& cfg);

// Stacked moment vector (alpha, beta-1) per (k,h), level-major order; the
// bootstrap statistic centers resampled moments at this vector.
Vector mz_moment_vector(const EvalSample& sample);

}  // namespace qfopt
