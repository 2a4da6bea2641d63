#pragma once

#include <cstdint>
#include <random>

namespace edgelearn {

using Rng = std::mt19937_64;

// Independent 64-bit seed for stream `index` of a run seeded with `base`.
std::uint64_t seed_stream(std::uint64_t base, std::uint64_t index);

// Bernoulli draws with 32-bit probability resolution, two per engine call.
class BernoulliBits {
 public:
  explicit BernoulliBits(Rng& rng) : rng_(rng) {}

  static std::uint64_t threshold(double p);

  bool next(std::uint64_t threshold) {
    if (!have_high_) {
      buffer_ = rng_();
      have_high_ = true;
      return (buffer_ & 0xffffffffu) < threshold;
    }
    have_high_ = false;
    return (buffer_ >> 32) < threshold;
  }

  // 64 independent draws at once, lane i set with the same probability as next(threshold).
  // Compares 64 bit-sliced uniforms against the threshold from the top bit down and stops
  // once every lane is decided (about log2(64) + 2 engine calls).
  std::uint64_t lanes(std::uint64_t threshold);

 private:
  Rng& rng_;
  std::uint64_t buffer_ = 0;
  bool have_high_ = false;
};

}  // namespace edgelearn
