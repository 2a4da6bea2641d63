#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <set>

#include "edgelearn/random.h"

using namespace edgelearn;

namespace {

// Lane-by-lane reference for BernoulliBits::lanes: lane i reads bit i of successive engine
// words as the binary digits of its uniform, most significant first, and is decided at the
// first digit that differs from the threshold's.
std::uint64_t lanes_reference(Rng& rng, std::uint64_t threshold) {
  std::array<int, 64> state{};  // 0 undecided, 1 below, 2 not below
  for (int bit = 31; bit >= 0; --bit) {
    bool open = false;
    for (int lane = 0; lane < 64; ++lane) open = open || state[lane] == 0;
    if (!open) break;
    const std::uint64_t word = rng();
    const int t = static_cast<int>((threshold >> bit) & 1U);
    for (int lane = 0; lane < 64; ++lane) {
      if (state[lane] != 0) continue;
      const int r = static_cast<int>((word >> lane) & 1U);
      if (r < t) state[lane] = 1;
      if (r > t) state[lane] = 2;
    }
  }
  std::uint64_t out = 0;
  for (int lane = 0; lane < 64; ++lane) {
    if (state[lane] == 1) out |= std::uint64_t{1} << lane;
  }
  return out;
}

}  // namespace

TEST(SeedStream, DeterministicAndDistinct) {
  EXPECT_EQ(seed_stream(7, 3), seed_stream(7, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t base = 0; base < 50; ++base) {
    for (std::uint64_t index = 0; index < 50; ++index) seen.insert(seed_stream(base, index));
  }
  EXPECT_EQ(seen.size(), 2500u);
  EXPECT_NE(seed_stream(1ULL << 32, 0), seed_stream(0, 0));
  EXPECT_NE(seed_stream(0, 1ULL << 32), seed_stream(0, 0));
}

TEST(BernoulliBits, ThresholdEdges) {
  EXPECT_EQ(BernoulliBits::threshold(0.0), 0u);
  EXPECT_EQ(BernoulliBits::threshold(-1.0), 0u);
  EXPECT_EQ(BernoulliBits::threshold(1.0), 1ULL << 32);
  EXPECT_EQ(BernoulliBits::threshold(0.5), 1ULL << 31);
  Rng rng(1);
  BernoulliBits bits(rng);
  EXPECT_EQ(bits.lanes(0), 0u);
  EXPECT_EQ(bits.lanes(1ULL << 32), ~std::uint64_t{0});
  for (int i = 0; i < 100; ++i) {
    EXPECT_FALSE(bits.next(0));
    EXPECT_TRUE(bits.next(1ULL << 32));
  }
}

TEST(BernoulliBits, NextFrequency) {
  Rng rng(5);
  BernoulliBits bits(rng);
  const std::uint64_t t = BernoulliBits::threshold(1.0 / 3.0);
  const int draws = 300000;
  int hits = 0;
  for (int i = 0; i < draws; ++i) hits += bits.next(t) ? 1 : 0;
  const double sd = std::sqrt(draws * (1.0 / 3) * (2.0 / 3));
  EXPECT_NEAR(hits, draws / 3.0, 5 * sd);
}

TEST(BernoulliBits, LanesMatchScalarReference) {
  for (double p : {1.0 / 3, 1.0 / 6, 0.5, 0.01, 0.999, 1.0 / 9}) {
    const std::uint64_t t = BernoulliBits::threshold(p);
    Rng a(11), b(11);
    BernoulliBits bits(a);
    for (int i = 0; i < 2000; ++i) ASSERT_EQ(bits.lanes(t), lanes_reference(b, t)) << p;
    EXPECT_EQ(a(), b());
  }
}

TEST(BernoulliBits, LanesFrequencyAndPairIndependence) {
  for (double p : {1.0 / 3, 1.0 / 6, 1.0 / 9}) {
    Rng rng(21);
    BernoulliBits bits(rng);
    const std::uint64_t t = BernoulliBits::threshold(p);
    const int calls = 20000;
    std::array<int, 64> per_lane{};
    int both = 0;
    for (int i = 0; i < calls; ++i) {
      const std::uint64_t w = bits.lanes(t);
      for (int lane = 0; lane < 64; ++lane) per_lane[lane] += (w >> lane) & 1U;
      both += ((w & 3U) == 3U) ? 1 : 0;
    }
    const double sd = std::sqrt(calls * p * (1 - p));
    for (int lane = 0; lane < 64; ++lane) EXPECT_NEAR(per_lane[lane], calls * p, 5 * sd) << lane;
    const double sd2 = std::sqrt(calls * p * p * (1 - p * p));
    EXPECT_NEAR(both, calls * p * p, 5 * sd2);
  }
}
