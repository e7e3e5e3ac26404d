#pragma once

#include <cstdint>

namespace polysplit {

// splitmix64 (Steele, Lea & Flood; public-domain reference constants).
// Single 64-bit word of state, full-period, and trivially reproducible across
// platforms, which is what the ensemble experiments need.  All random draws in
// the library go through this generator so that a (dim, seed) pair pins every
// tensor entry and initial condition bit-for-bit.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random mantissa bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer in [lo, hi] (small ranges; modulo bias is irrelevant for
  // the +-3 coefficient draws this is used for).
  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

}  // namespace polysplit
