#pragma once

#include <array>
#include <cstdint>

#include "qfopt/rng.hpp"
#include "qfopt/types.hpp"

namespace qfopt {

enum class DgpFamily { Ar1, Adl11, Garch11 };
enum class TestKind { Mz, Amz, Mh };

struct SimConfig {
  DgpFamily dgp = DgpFamily::Ar1;
  // AR(1)/ADL(1,1): y_t = b y_{t-1} (+ c z_{t-1}) + eps_t, forecasts built
  // with b_tilde in place of b. z is AR(1) with parameter d.
  double b = 0.6;
  double b_tilde = 0.6;
  double c = 0.0;
  double d = 0.6;
  // GARCH(1,1): (b0, b1, b2, b3), Student-t innovations with dof degrees of
  // freedom, standardized to unit variance.
  std::array<double, 4> garch_b{0.0, 0.05, 0.1, 0.85};
  std::array<double, 4> garch_b_tilde{0.0, 0.05, 0.1, 0.85};
  double dof = 30.0;

  int P = 240;
  int H = 4;
  std::vector<double> levels{0.25, 0.5, 0.75};
  MbbConfig mbb;
  HacConfig hac;
  int replications = 1999;
  double nominal_size = 0.05;
  // Relabels h=1 forecasts as h=H and vice versa; a constructed alternative
  // for the horizon-monotonicity test.
  bool swap_horizons = false;

  void validate() const;
};

struct SizePowerReport {
  double rejection_rate = 0.0;
  int rejections = 0;
  int replications = 0;
  SimConfig config;
  std::uint64_t seed = 0;
  double critical_value = 0.0;
  std::vector<double> statistics;            // per-replication statistics
  std::vector<double> bootstrap_statistics;  // one saved bootstrap draw each
};

// y_t = b y_{t-1} + eps_t with Var(eps) = 1 - b^2, so Var(y) = 1. Initial
// condition drawn from the stationary N(0,1) distribution. Returns n values.
Vector simulate_ar1(double b, int n, CounterRng& rng);

// h-step AR(1) quantile forecast b~^h y_t + sqrt(1 - b~^{2h}) Phi^{-1}(tau),
// aligned so entry t predicts series[t + h].
Vector ar1_quantile_forecasts(const Vector& series, double b_tilde, int h, double tau);

// ADL(1,1): z_t = d z_{t-1} + nu_t (Var nu = 1 - d^2),
// y_t = b y_{t-1} + c z_{t-1} + eps_t (Var eps = 1 - b^2).
struct AdlPath {
  Vector y;
  Vector z;
};
AdlPath simulate_adl(double b, double c, double d, int n, CounterRng& rng);

// GARCH(1,1) with standardized Student-t innovations:
// y_t = b0 + sigma_t eps_t, sigma^2_t = b1 + b2 y^2_{t-1} + b3 sigma^2_{t-1}.
// Recursion starts at sigma^2 = b1/(1-b2-b3) with a 500-observation burn-in.
struct GarchPath {
  Vector y;
  Vector sigma2;  // conditional variance aligned with y
};
GarchPath simulate_garch(const std::array<double, 4>& b, double dof, int n, CounterRng& rng);

// Quantile of the standardized (unit-variance) Student-t innovation.
double standardized_t_quantile(double tau, double dof);

// Builds one evaluation sample under cfg using the replication's stream.
EvalSample make_sim_sample(const SimConfig& cfg, CounterRng& rng);
AugmentedSample make_sim_augmented_sample(const SimConfig& cfg, CounterRng& rng);

// Warp-speed Monte Carlo: one bootstrap draw per replication; the critical
// value is the (1-a) empirical quantile of the cross-replication bootstrap
// statistics. Deterministic given (cfg, seed), independent of thread count.
SizePowerReport run_size_power(const SimConfig& cfg, TestKind test, std::uint64_t seed);

}  // namespace qfopt
