#pragma once

#include <cstdint>

// Counter-based uniforms: every draw is a pure hash of (seed, stream,
// counter), so results do not depend on evaluation order or worker count.

namespace spinmode::rng {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
}

// uniform in [0, 1) with 53 significant bits
constexpr double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return double(derive(seed, stream, counter) >> 11) * 0x1.0p-53;
}

}  // namespace spinmode::rng
