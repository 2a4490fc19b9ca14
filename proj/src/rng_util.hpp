#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ordfix {

// Uniform in [0, 1) with 53 random bits, independent of libstdc++'s
// distribution implementations so streams are reproducible everywhere.
inline double unit_real(std::mt19937_64& g) { return (g() >> 11) * 0x1.0p-53; }

inline double uniform_in(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * unit_real(g);
}

inline std::uint64_t bounded(std::mt19937_64& g, std::uint64_t n) {
  return n == 0 ? 0 : g() % n;
}

inline std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Per-check sub-seed: FNV-1a over the tag folded with the run seed, so each
// certifier draws an independent deterministic stream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return splitmix(h ^ seed);
}

}  // namespace ordfix
