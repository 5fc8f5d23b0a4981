#include <gtest/gtest.h>

#include <bit>

#include "insdel/prg.hpp"

using namespace insdel;

TEST(Prg, SpecChoosesSmallestW) {
  const auto s = PrgSpec::for_length(16, 0.25);
  EXPECT_EQ(s.w, 6u);
  EXPECT_EQ(s.d(), 12u);
  EXPECT_EQ(PrgSpec::for_length(8, 1.0).w, 3u);
  EXPECT_EQ(PrgSpec::for_length(9, 1.0).w, 4u);
}

TEST(Prg, ZeroYGivesZeros) {
  const PoweringPrg prg(PrgSpec::for_length(20, 0.5));
  for (std::uint64_t x = 0; x < 8; ++x) {
    const auto bits = prg.generate(x << prg.spec().w);
    for (auto b : bits) EXPECT_EQ(b, 0);
  }
}

TEST(Prg, ZeroXGivesLeadingBitOnly) {
  const PoweringPrg prg(PrgSpec::for_length(20, 0.5));
  for (std::uint64_t y = 0; y < (1u << prg.spec().w); ++y) {
    const auto bits = prg.generate(y);
    EXPECT_EQ(bits[0], static_cast<std::uint8_t>(std::popcount(1u & y) & 1));
    for (std::size_t i = 1; i < bits.size(); ++i) EXPECT_EQ(bits[i], 0);
  }
}

TEST(Prg, PointwiseMatchesStream) {
  const PoweringPrg prg(PrgSpec::for_length(40, 0.1));
  for (std::uint64_t seed : {5ull, 77ull, 123456ull, 262143ull}) {
    const auto bits = prg.generate(seed);
    for (std::size_t i = 0; i < bits.size(); ++i) ASSERT_EQ(prg.bit(seed, i), bits[i] == 1);
  }
  EXPECT_EQ(prg.generate(4242), prg.generate(4242));
}

TEST(Prg, SeedLengthChecked) {
  const PoweringPrg prg(PrgSpec{8, 0.5, 4});
  EXPECT_THROW(prg.generate(256), UsageError);
  EXPECT_NO_THROW(prg.generate(255));
}

TEST(Marginals, PoweringW4Length8ThreeWise) {
  const PoweringPrg prg(PrgSpec{8, 0.5, 4});
  EXPECT_LE(prg_verify_marginals(prg, 3), 8.0 / 16.0);
}

TEST(Marginals, PoweringW6Length16UpToThree) {
  const PoweringPrg prg(PrgSpec{16, 0.25, 6});
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_LE(prg_verify_marginals(prg, k), 0.25) << "k=" << k;
}

TEST(Marginals, ConstantSourceFails) {
  const std::vector<std::uint64_t> point{0x5A};
  for (std::size_t k = 1; k <= 3; ++k) {
    const double dev = max_marginal_deviation(point, 8, k);
    EXPECT_DOUBLE_EQ(dev, 1.0 - std::ldexp(1.0, -static_cast<int>(k)));
  }
}

TEST(Marginals, UniformSourceExact) {
  std::vector<std::uint64_t> all(1u << 10);
  for (std::uint64_t v = 0; v < all.size(); ++v) all[v] = v;
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(max_marginal_deviation(all, 10, k), 0.0);
}

TEST(Marginals, BudgetEnforced) {
  const PoweringPrg prg(PrgSpec{16, 0.25, 6});
  EXPECT_THROW(prg_verify_marginals(prg, 3, 1000), CapacityError);
}
