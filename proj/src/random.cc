#include "edgelearn/random.h"

#include <array>
#include <cmath>

namespace edgelearn {

std::uint64_t seed_stream(std::uint64_t base, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::uint64_t BernoulliBits::threshold(double p) {
  constexpr double kScale = 4294967296.0;
  if (!(p > 0.0)) return 0;
  if (p >= 1.0) return static_cast<std::uint64_t>(kScale);
  return static_cast<std::uint64_t>(std::floor(p * kScale));
}

std::uint64_t BernoulliBits::lanes(std::uint64_t threshold) {
  if (threshold == 0) return 0;
  if (threshold >= (std::uint64_t{1} << 32)) return ~std::uint64_t{0};
  std::uint64_t undecided = ~std::uint64_t{0};
  std::uint64_t below = 0;
  for (int bit = 31; bit >= 0 && undecided != 0; --bit) {
    const std::uint64_t r = rng_();
    const std::uint64_t t = std::uint64_t{0} - ((threshold >> bit) & 1U);
    below |= undecided & ~r & t;
    undecided &= ~(r ^ t);
  }
  return below;
}

}  // namespace edgelearn
