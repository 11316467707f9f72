#ifndef G2E_RNG_HPP
#define G2E_RNG_HPP

/// @file rng.hpp
/// SplitMix64: a tiny, seedable, portable 64-bit generator.
///
/// The algorithm is fully specified by its constants so that any
/// implementation (in any language) reproduces the same stream from the same
/// seed; every report records the seed it was produced with.

#include "g2e/scalar.hpp"
#include <cstdint>

namespace g2e {

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Next 64 uniformly distributed bits.
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [lo, hi] inclusive (small ranges only).
  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Small random rational with numerator in [-n, n] and denominator in [1, d].
  Rat rat(long long n, long long d) {
    return Rat(uniform_int(-n, n), uniform_int(1, d));
  }

  /// Nonzero variant of rat().
  Rat rat_nonzero(long long n, long long d) {
    Rat r = rat(n, d);
    while (r == 0) r = rat(n, d);
    return r;
  }

private:
  std::uint64_t state_;
};

} // namespace g2e

#endif
