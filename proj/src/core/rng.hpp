#pragma once

#include <cstdint>
#include <random>

namespace qforge {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent substream for worker `stream` of a master seed. Substreams are
// reproducible for a fixed (seed, stream) pair regardless of thread timing.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0xd1342543de82ef95ULL * (stream + 1));
  std::uint64_t a = splitmix64_next(s);
  std::uint64_t b = splitmix64_next(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

// Uniform double in [0,1) from the top 53 bits; identical across platforms.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t bound) {
  std::uint64_t threshold = (0ULL - bound) % bound;
  for (;;) {
    std::uint64_t r = g();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace qforge
