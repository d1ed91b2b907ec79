#pragma once

#include <cstdint>

namespace sedsim {

// splitmix64 finalizer. Used as a stateless keyed generator: feeding it
// related keys (sequential counters, seed mixes) yields independent-looking
// streams, which is exactly what per-mode amplitude lookup needs.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// One 64-bit word, a pure function of (seed, counter, slot).
inline std::uint64_t keyed_word(std::uint64_t seed, std::uint64_t counter, std::uint64_t slot) {
  return mix64(mix64(mix64(seed) ^ counter) + slot);
}

// Maps a word to (0, 1]; never 0, so it is safe under log().
inline double unit_open(std::uint64_t w) {
  return static_cast<double>((w >> 11) + 1) * 0x1.0p-53;
}

struct GaussianPair {
  double first = 0.0;
  double second = 0.0;
};

// Two independent standard normal variates, deterministic in (seed, counter).
GaussianPair gaussian_pair(std::uint64_t seed, std::uint64_t counter);

}  // namespace sedsim
