#pragma once

#include <cstdint>
#include <vector>

namespace rolextract {

/// Counter-based generator: draw i of stream `seed` is the SplitMix64
/// finalizer applied to seed + (i + 1) * 0x9E3779B97F4A7C15. Any draw can be
/// computed independently, and results are identical on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t counter) const {
    return mix(seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
  }

  std::uint64_t next_u64() { return at(counter_++); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection, so no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x = 0;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  /// Independent stream for trial `index` of this seed.
  CounterRng substream(std::uint64_t index) const {
    return CounterRng(mix(seed_ ^ mix(index + 0x632BE59BD9B4E019ULL)));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Fisher-Yates shuffle of 0..n-1 driven by CounterRng.
std::vector<int> random_permutation(int n, std::uint64_t seed);

}  // namespace rolextract
