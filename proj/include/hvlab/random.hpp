#pragma once

#include <cstdint>

namespace hvlab::rng {

// Counter-based uniform stream: every draw is a pure function of
// (seed, stream, index, slot), so results do not depend on which worker
// evaluates which index.

inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t draw_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                                         std::uint64_t slot) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ (stream * 0xd1b54a32d192ed03ULL));
  h = mix64(h ^ index);
  return mix64(h ^ (slot * 0xa0761d6478bd642fULL));
}

/// Uniform double in [0, 1) with 53 random bits.
inline constexpr double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                                  std::uint64_t slot) {
  return static_cast<double>(draw_bits(seed, stream, index, slot) >> 11) * 0x1.0p-53;
}

/// Domain-separated streams.
enum Stream : std::uint64_t {
  measure_points = 1,
  game_lambda = 2,
  game_accept = 3,
  game_alice = 4,
  game_bob = 5,
  probes = 6,
};

}  // namespace hvlab::rng
