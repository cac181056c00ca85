#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "qfopt/mbb.hpp"

using namespace qfopt;

TEST_CASE("single block covering the sample is one full run") {
  MbbConfig cfg;
  cfg.block_length = 6;
  cfg.seed = 1;
  const auto idx = draw_block_indices(6, cfg, 0);
  REQUIRE(idx.size() == 6);
  // One start on {0}: the identity permutation is the only possibility.
  for (int t = 0; t < 6; ++t) CHECK(idx[t] == t);
}

TEST_CASE("index vectors are concatenated consecutive runs, truncated to P") {
  MbbConfig cfg;
  cfg.block_length = 4;
  cfg.seed = 77;
  const int P = 10;  // ceil(10/4) = 3 blocks, last truncated to length 2
  for (std::uint64_t draw = 0; draw < 50; ++draw) {
    const auto idx = draw_block_indices(P, cfg, draw);
    REQUIRE(idx.size() == static_cast<std::size_t>(P));
    for (int t = 0; t < P; ++t) {
      CHECK(idx[t] >= 0);
      CHECK(idx[t] < P);
      if (t % cfg.block_length != 0) CHECK(idx[t] == idx[t - 1] + 1);
      if (t % cfg.block_length == 0) CHECK(idx[t] <= P - cfg.block_length);
    }
  }
}

TEST_CASE("block starts cover the whole admissible range") {
  MbbConfig cfg;
  cfg.block_length = 2;
  cfg.seed = 5;
  const int P = 6;
  std::set<int> starts;
  for (std::uint64_t draw = 0; draw < 400; ++draw) {
    const auto idx = draw_block_indices(P, cfg, draw);
    for (int t = 0; t < P; t += cfg.block_length) starts.insert(idx[t]);
  }
  // Uniform on {0,...,P-l}: all five starts should appear.
  CHECK(starts.size() == 5);
  CHECK(*starts.begin() == 0);
  CHECK(*starts.rbegin() == P - cfg.block_length);
}

TEST_CASE("draws are a pure function of (seed, draw_id)") {
  MbbConfig cfg;
  cfg.block_length = 3;
  cfg.seed = 99;
  const auto a = draw_block_indices(25, cfg, 17);
  const auto b = draw_block_indices(25, cfg, 17);
  CHECK(a == b);
  const auto c = draw_block_indices(25, cfg, 18);
  CHECK(a != c);
  cfg.seed = 100;
  const auto d = draw_block_indices(25, cfg, 17);
  CHECK(a != d);
}

TEST_CASE("resampling keeps rows jointly aligned") {
  const EvalSample s = testutil::make_sample(30, {0.25, 0.75}, {1, 2}, 4);
  MbbConfig cfg;
  cfg.block_length = 5;
  cfg.seed = 3;
  const auto idx = draw_block_indices(30, cfg, 2);
  const EvalSample r = resample(s, idx);
  REQUIRE(r.P() == 30);
  for (int t = 0; t < 30; ++t) {
    CHECK(r.y[t] == s.y[idx[t]]);
    for (int k = 0; k < s.K(); ++k)
      for (int h = 0; h < s.H(); ++h) CHECK(r.forecasts[k][h][t] == s.forecasts[k][h][idx[t]]);
  }
}

TEST_CASE("augmented and multivariate resampling follow the same indices") {
  AugmentedSample a;
  a.base = testutil::make_sample(20, {0.5}, {1}, 9);
  Matrix z(20, 2);
  for (int t = 0; t < 20; ++t) {
    z(t, 0) = t;
    z(t, 1) = 100 + t;
  }
  a.z.push_back(z);
  a.validate();

  MultiSeriesSample ms;
  ms.series.push_back(testutil::make_sample(20, {0.5}, {1}, 10));
  ms.series.push_back(testutil::make_sample(20, {0.5}, {1}, 11));
  ms.names = {"a", "b"};
  ms.validate();

  MbbConfig cfg;
  cfg.block_length = 4;
  cfg.seed = 8;
  const auto idx = draw_block_indices(20, cfg, 0);

  const AugmentedSample ra = resample(a, idx);
  for (int t = 0; t < 20; ++t) {
    CHECK(ra.base.y[t] == a.base.y[idx[t]]);
    CHECK(ra.z[0](t, 0) == doctest::Approx(idx[t]));
    CHECK(ra.z[0](t, 1) == doctest::Approx(100 + idx[t]));
  }

  const MultiSeriesSample rm = resample(ms, idx);
  for (int t = 0; t < 20; ++t) {
    CHECK(rm.series[0].y[t] == ms.series[0].y[idx[t]]);
    CHECK(rm.series[1].y[t] == ms.series[1].y[idx[t]]);
  }
}

TEST_CASE("invalid configurations are rejected") {
  MbbConfig cfg;
  cfg.block_length = 0;
  CHECK_THROWS_AS(draw_block_indices(10, cfg, 0), ConfigError);
  cfg.block_length = 11;
  CHECK_THROWS_AS(draw_block_indices(10, cfg, 0), ConfigError);
  cfg.block_length = 2;
  CHECK_THROWS_AS(draw_block_indices(0, cfg, 0), ConfigError);
}
