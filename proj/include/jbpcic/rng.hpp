#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace jbpcic {

using Rng = std::mt19937_64;

// Named sub-streams of one experiment seed. Each purpose draws from its own
// generator so that, e.g., an agent's exploration never perturbs the channel
// trace the oracle replays.
enum class Stream : std::uint64_t {
  drop = 1,
  channel = 2,
  mobility = 3,
  agent = 4,
  init_state = 5,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  const std::uint64_t s =
      splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(stream)) ^ index);
  return Rng(s);
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller on uniform01 draws, so normal variates are platform independent too.
inline double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace jbpcic
