#pragma once

#include <cstdint>
#include <random>

namespace stochord {

// All randomness goes through std::mt19937_64 (bit-exact across standard
// libraries) and the helpers below, never through std::*_distribution, whose
// output is implementation-defined.

/// Seed of the independent stream `stream` derived from a master seed
/// (splitmix64 finalizer over seed and stream index).
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64(stream_seed(seed, stream));
}

/// Uniform draw on the open interval (0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [lo, hi], by rejection so every value is equally likely.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return lo + r % span;
}

}  // namespace stochord
