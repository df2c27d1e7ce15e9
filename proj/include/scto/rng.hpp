#pragma once

#include <cstdint>

// Counter-based deterministic random numbers: every draw is a pure function of
// (seed, counter), so results are independent of evaluation order.

namespace scto {

inline std::uint64_t rng_mix(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64 finalizer applied to a seed/counter combination
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0,1), deterministic in (seed, counter).
inline double rng_uniform(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(rng_mix(seed, counter) >> 11) * 0x1.0p-53;
}

}  // namespace scto
