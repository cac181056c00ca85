#pragma once

#include <cstdint>

namespace qfopt {

// Counter-based random stream. Every value is a pure function of
// (seed, stream, counter), so draws keyed by (seed, draw_id) are identical
// no matter how many threads consume them or in which order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(mix(seed) ^ mix(stream ^ 0x9e3779b97f4a7c15ULL))), counter_(0) {}

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }
  result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform double in [0,1) with 53 random bits, never exactly 0 or 1 when
  // mapped through inverse CDFs (0 is remapped to the smallest step).
  double uniform01() {
    const double u = static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  // Uniform integer on {0,...,n-1} via 128-bit multiply (deterministic,
  // bias < 2^-64 which is immaterial here).
  std::uint64_t uniform_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>((*this)()) * n) >> 64);
  }

  // Standard normal via inverse CDF (fully specified, portable).
  double normal();

 private:
  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace qfopt
