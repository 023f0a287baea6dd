#pragma once

#include <cstdint>

namespace mixer {

// Finalizer of SplitMix64 (Steele, Lea & Flood, "Fast splittable
// pseudorandom number generators", OOPSLA 2014). Full 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream generator: 64-bit state advanced by the golden-ratio
// increment, output mixed by mix64. Period 2^64, passes BigCrush. This is
// the single RNG of the project; every experiment is a pure function of
// (config, seed) through it.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~0ULL; }

  // Unbiased uniform draw from [0, n). Lemire's multiply-then-reject.
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform on [0,1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Per-trajectory seed: base seed xor'ed with a mixed trajectory index, then
// fully avalanched. Distinct indices give decorrelated streams, so
// trajectories can be farmed out to workers in any order.
inline std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(base ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

}  // namespace mixer
