#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qfopt/types.hpp"

namespace qfopt::detail {

// Evaluates one_draw(draw_id) for draw_id = 0..B-1 across threads, writing
// results in draw order so the output is independent of scheduling. A draw
// whose refit throws is retried with draw_id shifted by B (up to 5 chained
// attempts); more than 1% failed draws aborts the run.
std::vector<double> run_bootstrap(const MbbConfig& cfg,
                                  const std::function<double(std::uint64_t)>& one_draw,
                                  int& retried, std::vector<std::string>& diagnostics);

// Fills critical values (0.90/0.95/0.99 empirical quantiles, order statistic
// ceil(level*B)) and the p-value #{U^b >= U}/B from the bootstrap draws.
void finalize_result(TestResult& result, std::vector<double> u_boot);

// Parallel-for over replications 0..n-1 with order-independent collection.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace qfopt::detail
