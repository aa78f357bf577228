#pragma once

#include <cstdint>

namespace gnplab {

// Counter-based randomness: every decision is a pure hash of
// (master_seed, stream_id, counter). Identical specs reproduce identical
// samples regardless of call order or thread scheduling.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix64(a);
  h = mix64(h ^ b);
  h = mix64(h ^ c);
  return h;
}

// Uniform double in [0, 1) from the top 53 bits of a hash.
inline double uniform01(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Stable per-trial stream for experiment runs.
inline RngSpec derive_trial_rng(std::uint64_t master_seed, std::uint64_t n,
                                std::uint64_t trial) {
  return RngSpec{master_seed, hash3(0x61c8864680b583ebULL ^ n, n, trial)};
}

}  // namespace gnplab
