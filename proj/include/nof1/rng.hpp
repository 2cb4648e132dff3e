// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Pinned pseudo-random generator for reproducible experiments.
//
// Algorithm (fixed; do not change without bumping the output schema):
//   * stream keying: SplitMix64 applied to master_seed + index * GOLDEN
//   * generator: xoshiro256++ 1.0, state filled by four SplitMix64 steps
//
// All draws are pure 64-bit integer arithmetic, so a (seed, index) pair
// produces the same stream on every platform.

#ifndef NOF1_RNG_HPP
#define NOF1_RNG_HPP

#include <cstdint>

namespace nof1 {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic sub-seed for one replicate of a Monte Carlo run.
inline std::uint64_t replicate_seed(std::uint64_t master_seed,
                                    std::uint64_t replicate_index) {
  std::uint64_t s = master_seed + (replicate_index + 1) * kGolden;
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
    bool all_zero = true;
    for (auto word : state_) all_zero = all_zero && word == 0;
    if (all_zero) state_[0] = kGolden;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Fair coin.
  bool coin() { return (next_u64() >> 63) != 0; }

  // Bernoulli(p); exactly a fair coin when p == 0.5.
  bool bernoulli(double p) { return next_double() < p; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace nof1

#endif  // NOF1_RNG_HPP
