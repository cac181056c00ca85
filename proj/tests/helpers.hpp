#pragma once

#include "qfopt/rng.hpp"
#include "qfopt/types.hpp"

namespace qfopt::testutil {

// Synthetic sample with iid N(0,1) realizations and forecasts
// f = slope * x_t + Phi^{-1}-style level shift, where x_t is a noisy signal
// correlated with y. Good enough for wiring tests; statistical tests build
// samples through the simulation module instead.
inline EvalSample make_sample(int P, const std::vector<double>& levels,
                              const std::vector<int>& horizons, std::uint64_t seed,
                              double slope = 1.0, double shift_scale = 1.0) {
  CounterRng rng(seed, 0);
  EvalSample s;
  s.levels = levels;
  s.horizons = horizons;
  s.y.resize(P);
  Vector signal(P);
  for (int t = 0; t < P; ++t) {
    signal[t] = rng.normal();
    s.y[t] = signal[t] + 0.5 * rng.normal();
  }
  s.forecasts.resize(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    for (std::size_t h = 0; h < horizons.size(); ++h) {
      Vector f(P);
      for (int t = 0; t < P; ++t)
        f[t] = slope * signal[t] + shift_scale * (levels[k] - 0.5) +
               0.01 * static_cast<double>(h);
      s.forecasts[k].push_back(f);
    }
  }
  s.validate();
  return s;
}

}  // namespace qfopt::testutil
