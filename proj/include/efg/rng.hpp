#pragma once

#include <cstdint>
#include <random>

namespace efg {

// All randomized components (generators, samplers, benchmarks) draw from
// std::mt19937_64, whose output sequence is fixed by the standard, through
// the conversion helpers below. Never use std::uniform_*_distribution for
// anything that must reproduce across standard libraries.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in [0, hi).
inline double uniform_real(Rng& rng, double hi) { return uniform_unit(rng) * hi; }

// Uniform integer in [0, n) by rejection; unbiased and portable.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace efg
