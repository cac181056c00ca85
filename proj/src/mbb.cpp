#include "qfopt/mbb.hpp"

#include "qfopt/rng.hpp"

namespace qfopt {

std::vector<int> draw_block_indices(int P, const MbbConfig& cfg, std::uint64_t draw_id) {
  const int l = cfg.block_length;
  if (l < 1) throw ConfigError("mbb: block length must be positive");
  if (l > P) throw ConfigError("mbb: block length exceeds sample length");

  CounterRng rng(cfg.seed, draw_id);
  std::vector<int> idx;
  idx.reserve(P);
  const std::uint64_t n_starts = static_cast<std::uint64_t>(P - l + 1);
  while (static_cast<int>(idx.size()) < P) {
    const int start = static_cast<int>(rng.uniform_below(n_starts));
    for (int j = 0; j < l && static_cast<int>(idx.size()) < P; ++j) {
      idx.push_back(start + j);
    }
  }
  return idx;
}

namespace {

void check_indices(int P, const std::vector<int>& indices) {
  if (static_cast<int>(indices.size()) != P) {
    throw std::logic_error("mbb: index vector length mismatch");
  }
  for (int i : indices) {
    if (i < 0 || i >= P) throw std::logic_error("mbb: index out of range");
  }
}

Vector gather(const Vector& v, const std::vector<int>& indices) {
  Vector out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t t = 0; t < indices.size(); ++t) out[t] = v[indices[t]];
  return out;
}

}  // namespace

EvalSample resample(const EvalSample& sample, const std::vector<int>& indices) {
  check_indices(sample.P(), indices);
  EvalSample out = sample;
  out.y = gather(sample.y, indices);
  for (auto& per_level : out.forecasts) {
    for (auto& slice : per_level) slice = gather(slice, indices);
  }
  return out;
}

AugmentedSample resample(const AugmentedSample& sample, const std::vector<int>& indices) {
  AugmentedSample out;
  out.base = resample(sample.base, indices);
  out.z.reserve(sample.z.size());
  for (const auto& zh : sample.z) {
    Matrix m(zh.rows(), zh.cols());
    for (std::size_t t = 0; t < indices.size(); ++t) m.row(t) = zh.row(indices[t]);
    out.z.push_back(std::move(m));
  }
  return out;
}

MultiSeriesSample resample(const MultiSeriesSample& sample, const std::vector<int>& indices) {
  MultiSeriesSample out;
  out.names = sample.names;
  out.series.reserve(sample.series.size());
  for (const auto& s : sample.series) out.series.push_back(resample(s, indices));
  return out;
}

}  // namespace qfopt
