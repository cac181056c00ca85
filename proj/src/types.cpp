#include "qfopt/types.hpp"

namespace qfopt {

std::vector<QuantileLevel> make_levels(const std::vector<double>& taus) {
  std::vector<QuantileLevel> out;
  out.reserve(taus.size());
  double prev = 0.0;
  for (double t : taus) {
    if (!out.empty() && t <= prev) {
      throw ConfigError("quantile levels must be strictly increasing");
    }
    out.emplace_back(t);
    prev = t;
  }
  return out;
}

void EvalSample::validate() const {
  if (P() < 1) throw ConfigError("sample: no observations");
  make_levels(levels);
  if (horizons.empty()) throw ConfigError("sample: no horizons");
  for (std::size_t i = 1; i < horizons.size(); ++i) {
    if (horizons[i] <= horizons[i - 1]) {
      throw ConfigError("sample: horizons must be strictly increasing");
    }
  }
  if (horizons.front() < 1) throw ConfigError("sample: horizons must be positive");
  if (!y.allFinite()) throw ConfigError("sample: non-finite realization");
  if (static_cast<int>(forecasts.size()) != K()) {
    throw ConfigError("sample: forecast array level count mismatch");
  }
  for (const auto& per_level : forecasts) {
    if (static_cast<int>(per_level.size()) != H()) {
      throw ConfigError("sample: forecast array horizon count mismatch");
    }
    for (const auto& slice : per_level) {
      if (slice.size() != y.size()) throw ConfigError("sample: forecast slice length mismatch");
      if (!slice.allFinite()) throw ConfigError("sample: non-finite forecast");
    }
  }
}

void AugmentedSample::validate() const {
  base.validate();
  // q = 0 (empty z) is allowed and reduces the augmented test to the plain
  // MZ test.
  if (z.empty()) return;
  if (static_cast<int>(z.size()) != base.H()) {
    throw ConfigError("augmented sample: z horizon count mismatch");
  }
  const int nq = q();
  for (const auto& zh : z) {
    if (zh.rows() != base.y.size() || static_cast<int>(zh.cols()) != nq) {
      throw ConfigError("augmented sample: z shape mismatch");
    }
    if (!zh.allFinite()) throw ConfigError("augmented sample: non-finite regressor");
  }
}

void MultiSeriesSample::validate() const {
  if (G() < 1) throw ConfigError("multivariate sample: no series");
  if (!names.empty() && static_cast<int>(names.size()) != G()) {
    throw ConfigError("multivariate sample: name count mismatch");
  }
  const auto& first = series.front();
  for (const auto& s : series) {
    s.validate();
    if (s.P() != first.P() || s.levels != first.levels || s.horizons != first.horizons) {
      throw ConfigError("multivariate sample: series must share levels, horizons, and length");
    }
  }
}

}  // namespace qfopt
