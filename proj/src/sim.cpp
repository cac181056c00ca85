#include "qfopt/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "qfopt/detail/bootstrap.hpp"
#include "qfopt/ext.hpp"
#include "qfopt/mbb.hpp"
#include "qfopt/mono.hpp"
#include "qfopt/mz.hpp"
#include "qfopt/stats.hpp"

namespace qfopt {

void SimConfig::validate() const {
  if (P < 20) throw ConfigError("sim: P must be at least 20");
  if (H < 1) throw ConfigError("sim: need at least one horizon");
  make_levels(levels);
  if (replications < 100) throw ConfigError("sim: need at least 100 replications");
  if (!(nominal_size > 0.0 && nominal_size < 1.0)) {
    throw ConfigError("sim: nominal size outside (0,1)");
  }
  if (dgp == DgpFamily::Garch11) {
    if (garch_b[2] + garch_b[3] >= 1.0) throw ConfigError("sim: GARCH not stationary");
    if (dof <= 2.0) throw ConfigError("sim: need dof > 2 for finite variance");
    if (H != 1) throw ConfigError("sim: GARCH design supports H = 1 only");
  } else {
    if (std::fabs(b) >= 1.0) throw ConfigError("sim: |b| must be below 1");
    if (std::fabs(b_tilde) >= 1.0) throw ConfigError("sim: |b_tilde| must be below 1");
    if (dgp == DgpFamily::Adl11 && std::fabs(d) >= 1.0) {
      throw ConfigError("sim: |d| must be below 1");
    }
  }
}

Vector simulate_ar1(double b, int n, CounterRng& rng) {
  if (std::fabs(b) >= 1.0) throw std::domain_error("simulate_ar1: |b| must be below 1");
  if (n < 1) throw ConfigError("simulate_ar1: n must be positive");
  Vector y(n);
  const double sd_eps = std::sqrt(1.0 - b * b);
  y[0] = rng.normal();  // stationary N(0,1) initial condition
  for (int t = 1; t < n; ++t) y[t] = b * y[t - 1] + sd_eps * rng.normal();
  return y;
}

Vector ar1_quantile_forecasts(const Vector& series, double b_tilde, int h, double tau) {
  if (std::fabs(b_tilde) >= 1.0) {
    throw std::domain_error("ar1_quantile_forecasts: |b_tilde| must be below 1");
  }
  if (h < 1 || h >= series.size()) throw ConfigError("ar1_quantile_forecasts: bad horizon");
  const double bh = std::pow(b_tilde, h);
  const double spread = std::sqrt(1.0 - std::pow(b_tilde, 2 * h)) * normal_quantile(tau);
  return (bh * series.head(series.size() - h)).array() + spread;
}

AdlPath simulate_adl(double b, double c, double d, int n, CounterRng& rng) {
  if (std::fabs(b) >= 1.0 || std::fabs(d) >= 1.0) {
    throw std::domain_error("simulate_adl: AR parameters must be below 1 in modulus");
  }
  constexpr int kBurnIn = 100;
  const double sd_eps = std::sqrt(1.0 - b * b);
  const double sd_nu = std::sqrt(1.0 - d * d);
  AdlPath path;
  path.y.resize(n);
  path.z.resize(n);
  double y = rng.normal(), z = rng.normal();
  for (int t = -kBurnIn; t < n; ++t) {
    const double z_next = d * z + sd_nu * rng.normal();
    const double y_next = b * y + c * z + sd_eps * rng.normal();
    y = y_next;
    z = z_next;
    if (t >= 0) {
      path.y[t] = y;
      path.z[t] = z;
    }
  }
  return path;
}

double standardized_t_quantile(double tau, double dof) {
  if (dof <= 2.0) throw std::domain_error("standardized_t_quantile: need dof > 2");
  return student_t_quantile(tau, dof) * std::sqrt((dof - 2.0) / dof);
}

GarchPath simulate_garch(const std::array<double, 4>& b, double dof, int n, CounterRng& rng) {
  if (b[2] + b[3] >= 1.0) throw std::domain_error("simulate_garch: b2 + b3 must be below 1");
  if (dof <= 2.0) throw std::domain_error("simulate_garch: need dof > 2");
  constexpr int kBurnIn = 500;
  const double t_scale = std::sqrt((dof - 2.0) / dof);
  GarchPath path;
  path.y.resize(n);
  path.sigma2.resize(n);
  double sigma2 = b[1] / (1.0 - b[2] - b[3]);
  double y = 0.0;
  for (int t = -kBurnIn; t < n; ++t) {
    if (t > -kBurnIn) sigma2 = b[1] + b[2] * y * y + b[3] * sigma2;
    const double eps = student_t_quantile(rng.uniform01(), dof) * t_scale;
    y = b[0] + std::sqrt(sigma2) * eps;
    if (t >= 0) {
      path.y[t] = y;
      path.sigma2[t] = sigma2;
    }
  }
  return path;
}

namespace {

// AR(1)/ADL designs: a sample of size P+H+1 (one stationary initial
// condition) supports h-step forecasts for every evaluation period. The
// forecast applies the AR(1) quantile formula with slope b_tilde, ignoring
// any augmenting variable in the DGP.
EvalSample assemble_ar_sample(const Vector& y_full, const SimConfig& cfg) {
  const int P = cfg.P, H = cfg.H;
  EvalSample sample;
  sample.levels = cfg.levels;
  for (int h = 1; h <= H; ++h) sample.horizons.push_back(h);
  sample.y = y_full.segment(H + 1, P);
  sample.forecasts.resize(cfg.levels.size());
  for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
    sample.forecasts[k].resize(H);
    for (int h = 1; h <= H; ++h) {
      const double bh = std::pow(cfg.b_tilde, h);
      const double spread =
          std::sqrt(1.0 - std::pow(cfg.b_tilde, 2 * h)) * normal_quantile(cfg.levels[k]);
      const Vector fc = (bh * y_full.head(y_full.size() - h)).array() + spread;
      sample.forecasts[k][h - 1] = fc.segment(H + 1 - h, P);
    }
  }
  if (cfg.swap_horizons && H >= 2) {
    for (auto& per_level : sample.forecasts) std::swap(per_level.front(), per_level.back());
  }
  return sample;
}

EvalSample assemble_garch_sample(const SimConfig& cfg, CounterRng& rng) {
  const int P = cfg.P;
  const GarchPath path = simulate_garch(cfg.garch_b, cfg.dof, P + 1, rng);
  const auto& bt = cfg.garch_b_tilde;
  EvalSample sample;
  sample.levels = cfg.levels;
  sample.horizons = {1};
  sample.y = path.y.segment(1, P);
  sample.forecasts.resize(cfg.levels.size());
  for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
    const double fq = standardized_t_quantile(cfg.levels[k], cfg.dof);
    Vector fc(P);
    for (int t = 0; t < P; ++t) {
      const double y2 = path.y[t] * path.y[t];
      fc[t] = bt[0] + std::sqrt(bt[1] + bt[2] * y2 + bt[3] * path.sigma2[t]) * fq;
    }
    sample.forecasts[k].push_back(std::move(fc));
  }
  return sample;
}

}  // namespace

EvalSample make_sim_sample(const SimConfig& cfg, CounterRng& rng) {
  switch (cfg.dgp) {
    case DgpFamily::Ar1:
      return assemble_ar_sample(simulate_ar1(cfg.b, cfg.P + cfg.H + 1, rng), cfg);
    case DgpFamily::Adl11:
      return assemble_ar_sample(simulate_adl(cfg.b, cfg.c, cfg.d, cfg.P + cfg.H + 1, rng).y, cfg);
    case DgpFamily::Garch11:
      return assemble_garch_sample(cfg, rng);
  }
  throw ConfigError("sim: unknown DGP");
}

AugmentedSample make_sim_augmented_sample(const SimConfig& cfg, CounterRng& rng) {
  if (cfg.dgp == DgpFamily::Garch11) {
    throw ConfigError("sim: augmented design is defined for the AR and ADL DGPs");
  }
  const int P = cfg.P, H = cfg.H;
  const int n = P + H + 1;
  Vector y_full, z_full;
  if (cfg.dgp == DgpFamily::Adl11) {
    AdlPath path = simulate_adl(cfg.b, cfg.c, cfg.d, n, rng);
    y_full = std::move(path.y);
    z_full = std::move(path.z);
  } else {
    // Size design: y is AR(1) and z an independent AR(1) that carries no
    // predictive content.
    y_full = simulate_ar1(cfg.b, n, rng);
    z_full = simulate_ar1(cfg.d, n, rng);
  }
  AugmentedSample sample;
  sample.base = assemble_ar_sample(y_full, cfg);
  sample.z.resize(H);
  for (int h = 1; h <= H; ++h) {
    Matrix zh(P, 1);
    for (int t = 0; t < P; ++t) zh(t, 0) = z_full[H + 1 + t - h];
    sample.z[h - 1] = std::move(zh);
  }
  return sample;
}

SizePowerReport run_size_power(const SimConfig& cfg, TestKind test, std::uint64_t seed) {
  cfg.validate();
  if (test == TestKind::Mh && cfg.H < 2) {
    throw ConfigError("sim: monotonicity test needs at least two horizons");
  }
  const int M = cfg.replications;
  // Bootstrap index draws use a decorrelated seed so they never collide with
  // the simulation streams keyed by the same base seed.
  MbbConfig mbb = cfg.mbb;
  mbb.seed = seed ^ 0xb5ad4eceda1ce2a9ULL;

  std::vector<double> u(M), u_boot(M);
  std::atomic<int> failures{0};
  const int max_failures = std::max(1, M / 100);

  detail::parallel_for(M, cfg.mbb.threads, [&](int m) {
    constexpr int kMaxAttempts = 5;
    for (int attempt = 0;; ++attempt) {
      const std::uint64_t stream =
          static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(attempt) * M;
      try {
        CounterRng rng(seed, stream);
        const auto indices_of = [&](int P) { return draw_block_indices(P, mbb, stream); };
        switch (test) {
          case TestKind::Mz: {
            const EvalSample sample = make_sim_sample(cfg, rng);
            const Vector m_hat = mz_moment_vector(sample);
            const Vector m_b = mz_moment_vector(resample(sample, indices_of(sample.P())));
            u[m] = cfg.P * m_hat.squaredNorm();
            u_boot[m] = cfg.P * (m_b - m_hat).squaredNorm();
            break;
          }
          case TestKind::Amz: {
            const AugmentedSample sample = make_sim_augmented_sample(cfg, rng);
            const Vector m_hat = amz_moment_vector(sample);
            const Vector m_b =
                amz_moment_vector(resample(sample, indices_of(sample.base.P())));
            u[m] = cfg.P * m_hat.squaredNorm();
            u_boot[m] = cfg.P * (m_b - m_hat).squaredNorm();
            break;
          }
          case TestKind::Mh: {
            const EvalSample sample = make_sim_sample(cfg, rng);
            const LossDiffPanel panel = loss_differences(sample);
            const MhParts parts = mh_prepare(panel, cfg.hac);
            u[m] = parts.statistic;
            u_boot[m] = mh_bootstrap_statistic(panel, parts, indices_of(panel.P()),
                                               mbb.block_length);
            break;
          }
        }
        return;
      } catch (const std::exception& e) {
        const int f = failures.fetch_add(1) + 1;
        if (f > max_failures || attempt + 1 >= kMaxAttempts) {
          throw std::runtime_error(std::string("sim: replication failures exceeded 1%: ") +
                                   e.what());
        }
      }
    }
  });

  // Warp-speed critical value: empirical (1-a) quantile over the M saved
  // bootstrap draws.
  std::vector<double> sorted = u_boot;
  std::sort(sorted.begin(), sorted.end());
  const int rank = std::clamp(
      static_cast<int>(std::ceil((1.0 - cfg.nominal_size) * M)), 1, M);
  const double critical = sorted[rank - 1];

  SizePowerReport report;
  report.replications = M;
  report.config = cfg;
  report.seed = seed;
  for (double stat : u) {
    if (stat > critical) ++report.rejections;
  }
  report.rejection_rate = static_cast<double>(report.rejections) / M;
  report.critical_value = critical;
  report.statistics = std::move(u);
  report.bootstrap_statistics = std::move(u_boot);
  return report;
}

}  // namespace qfopt
