#include "qfopt/detail/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qfopt::detail {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, n));
  if (nthreads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> run_bootstrap(const MbbConfig& cfg,
                                  const std::function<double(std::uint64_t)>& one_draw,
                                  int& retried, std::vector<std::string>& diagnostics) {
  const int B = cfg.draws;
  if (B < 1) throw ConfigError("bootstrap: need at least one draw");
  std::vector<double> out(B);
  std::atomic<int> failures{0};
  const int max_failures = std::max(1, B / 100);

  parallel_for(B, cfg.threads, [&](int b) {
    constexpr int kMaxAttempts = 5;
    for (int attempt = 0;; ++attempt) {
      const std::uint64_t draw_id =
          static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(attempt) * B;
      try {
        out[b] = one_draw(draw_id);
        return;
      } catch (const std::exception& e) {
        const int f = failures.fetch_add(1) + 1;
        if (f > max_failures) {
          throw std::runtime_error(std::string("bootstrap: more than 1% of draws failed; last error: ") + e.what());
        }
        if (attempt + 1 >= kMaxAttempts) {
          throw std::runtime_error(std::string("bootstrap: draw failed after retries: ") + e.what());
        }
      }
    }
  });

  retried = failures.load();
  if (retried > 0) {
    diagnostics.push_back(std::to_string(retried) + " bootstrap draw(s) retried with fresh blocks");
  }
  return out;
}

void finalize_result(TestResult& result, std::vector<double> u_boot) {
  const int B = static_cast<int>(u_boot.size());
  int ge = 0;
  for (double u : u_boot) {
    if (u >= result.statistic) ++ge;
  }
  result.p_value = static_cast<double>(ge) / B;

  std::sort(u_boot.begin(), u_boot.end());
  for (double level : {0.90, 0.95, 0.99}) {
    const int rank = static_cast<int>(std::ceil(level * B));  // 1-based order statistic
    result.critical_values[level] = u_boot[std::clamp(rank, 1, B) - 1];
  }
}

}  // namespace qfopt::detail
