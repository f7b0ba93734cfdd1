#ifndef CORRTHERM_RNG_HPP
#define CORRTHERM_RNG_HPP

#include <cstdint>

namespace corrtherm {

/// Counter-based 64-bit generator (SplitMix64 output function applied to
/// key + i*gamma). Streams are keyed by (seed, stream) so independent
/// trajectories can draw from disjoint, reproducible streams regardless of
/// thread scheduling. Output i depends only on (seed, stream, i).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed) ^ (stream * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL))) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform double in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [0,n) without modulo bias (rejection sampling).
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static std::uint64_t mix(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace corrtherm

#endif
