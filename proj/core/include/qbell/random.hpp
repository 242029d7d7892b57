#pragma once

#include <cstdint>
#include <random>

namespace qbell {

/// Random stream used by every sampler. Streams are never shared between
/// workers; each one is derived from a (seed, index) pair.
using RandomStream = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-independent per-sample stream: depends only on (seed, index).
inline RandomStream derive_stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t const a = mix64(seed);
  std::uint64_t const b = mix64(a ^ mix64(index + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return RandomStream(seq);
}

}  // namespace qbell
