#pragma once

#include <cstdint>
#include <random>

namespace mucfc {

// Draw helpers on top of mt19937_64. The standard distributions are not
// pinned across library implementations, so every randomized component in
// this project draws through these two functions to keep seeded output
// stable regardless of toolchain.

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return lo + u * (hi - lo);
}

inline int uniform_int(std::mt19937_64& rng, int n) {
  // n is tiny (task/UAV counts), so modulo bias is irrelevant here.
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

// splitmix64 finalizer, used to derive independent sub-seeds from one
// master seed without correlated streams.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(a) ^ b);
}

}  // namespace mucfc
