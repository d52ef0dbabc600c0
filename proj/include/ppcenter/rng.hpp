#pragma once

#include <cstdint>
#include <random>

namespace ppc {

// All randomized components draw from a 64-bit Mersenne twister. Results are
// reproducible for a given seed within one build (distribution objects are
// implementation defined across standard libraries).
using Rng = std::mt19937_64;

// splitmix64 finalizer; derives independent sub-seeds (per worker, per
// restart, per sample chunk) from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform integer in [0, bound).
inline int uniform_index(Rng& rng, int bound) {
  return std::uniform_int_distribution<int>(0, bound - 1)(rng);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace ppc
