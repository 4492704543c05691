#pragma once

// SplitMix64 generator. Chosen because it is tiny, well known, and fully
// specified at the bit level, so sampled runs reproduce byte-identically
// across platforms (std:: distributions are implementation-defined).
//
// Independent streams are derived from (seed, stream index); every simulated
// computer copy gets its own stream.

#include <cstdint>

namespace tbell {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  // Stream for copy `index` of a run seeded with `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(finalize(seed + finalize(kGolden * (index + 1))));
  }

  std::uint64_t next() {
    state_ += kGolden;
    return finalize(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static constexpr std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace tbell
