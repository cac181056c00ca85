#pragma once

#include <cstdint>
#include <vector>

#include "qfopt/types.hpp"

namespace qfopt {

// Draws the index vector for one moving-block-bootstrap sample: ceil(P/l)
// block starts uniform on {0,...,P-l}, runs of length l concatenated and
// truncated to P. Pure function of (cfg.seed, draw_id).
std::vector<int> draw_block_indices(int P, const MbbConfig& cfg, std::uint64_t draw_id);

// Row-wise resampling that keeps the realization and every forecast slice
// (and, for the multivariate case, every series) jointly aligned.
EvalSample resample(const EvalSample& sample, const std::vector<int>& indices);
AugmentedSample resample(const AugmentedSample& sample, const std::vector<int>& indices);
MultiSeriesSample resample(const MultiSeriesSample& sample, const std::vector<int>& indices);

}  // namespace qfopt
