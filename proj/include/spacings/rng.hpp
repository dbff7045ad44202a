#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace spacings {

// splitmix64 output function (Steele, Lea, Flood). Bijective on 64-bit words,
// used here only to spread structured seed material.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Engine for one replicate. Every stochastic routine in the library derives
// its engines from (master_seed, replicate_index) this way, so results depend
// only on those two values and never on thread count or scheduling order.
// mt19937_64 seeding from a single word is fully specified by the standard,
// which keeps streams byte-identical across platforms.
inline std::mt19937_64 substream(std::uint64_t master_seed, std::uint64_t index) {
  return std::mt19937_64(mix64(master_seed ^ mix64(index)));
}

// Uniform on (0,1), never exactly 0 or 1: top 53 bits plus a half-ulp offset.
// std::*_distribution is avoided throughout because its algorithms are
// implementation-defined and would break cross-platform reproducibility.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>((g() >> 11) + 0.5) * 0x1.0p-53;
}

inline double exponential(std::mt19937_64& g) { return -std::log(uniform01(g)); }

// Gamma(r,1) draw for integer r as a sum of r unit exponentials.
inline double gamma_int(std::mt19937_64& g, int r) {
  double s = 0.0;
  for (int i = 0; i < r; ++i) s += exponential(g);
  return s;
}

}  // namespace spacings
