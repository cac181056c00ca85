#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qfopt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Thrown on invalid user-supplied configuration or data.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a regression design is rank deficient (e.g. constant forecast
// column, which leaves the slope unidentified).
class SingularDesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when the interior-point solver hits its iteration cap before
// reaching the duality-gap tolerance. Carries the best iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Vector best, double gap)
      : std::runtime_error(what), best_iterate(std::move(best)), duality_gap(gap) {}
  Vector best_iterate;
  double duality_gap;
};

// A quantile level tau in (0,1).
struct QuantileLevel {
  double tau;
  explicit QuantileLevel(double t) : tau(t) {
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("quantile level must lie in (0,1)");
  }
};

// Validates a strictly increasing, duplicate-free list of levels.
std::vector<QuantileLevel> make_levels(const std::vector<double>& taus);

// Result of one linear quantile regression fit.
struct QrFit {
  Vector coefficients;  // [0]=alpha, [1]=beta, [2..]=gamma when present
  double tau = 0.0;
  int horizon = 1;
  double objective = 0.0;  // mean pinball loss at the optimum
  bool converged = false;
  int iterations = 0;
};

// Realizations plus the (quantile x horizon x time) forecast array for one
// series. forecasts[k][h] is the length-P slice at level k, horizon index h.
struct EvalSample {
  Vector y;
  std::vector<std::vector<Vector>> forecasts;  // [K][H] -> length P
  std::vector<double> levels;                  // strictly increasing taus
  std::vector<int> horizons;                   // strictly increasing, size H

  int P() const { return static_cast<int>(y.size()); }
  int K() const { return static_cast<int>(levels.size()); }
  int H() const { return static_cast<int>(horizons.size()); }
  void validate() const;
};

// EvalSample plus augmenting regressors; z[h] is a P x q matrix whose row t
// holds the information available at t-h (alignment is the caller's job).
struct AugmentedSample {
  EvalSample base;
  std::vector<Matrix> z;  // [H] -> P x q
  int q() const { return z.empty() ? 0 : static_cast<int>(z.front().cols()); }
  void validate() const;
};

// G series sharing levels, horizons, and evaluation window length.
struct MultiSeriesSample {
  std::vector<EvalSample> series;
  std::vector<std::string> names;  // optional; sized G when present
  int G() const { return static_cast<int>(series.size()); }
  void validate() const;
};

// Moving block bootstrap configuration.
struct MbbConfig {
  int block_length = 4;
  int draws = 1000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct HacConfig {
  int bandwidth = 4;  // Bartlett kernel, s_T lags
};

// One contribution cell of a test statistic. For MZ-family tests h2 is
// unused; the monotonicity test keys a cell by the horizon pair (h, h2).
struct ContributionKey {
  std::string series = "0";
  double tau = 0.0;
  int h = 0;
  int h2 = 0;
  bool operator<(const ContributionKey& o) const {
    return std::tie(series, tau, h, h2) < std::tie(o.series, o.tau, o.h, o.h2);
  }
};

struct TestResult {
  std::string test;  // "mz", "amz", "mmz", "mh"
  double statistic = 0.0;
  std::map<double, double> critical_values;  // {0.90,0.95,0.99} -> value
  double p_value = 1.0;
  std::map<ContributionKey, double> contributions;
  int kappa = 0;
  int P = 0;
  MbbConfig config;
  int retried_draws = 0;
  std::vector<std::string> diagnostics;
};

}  // namespace qfopt
