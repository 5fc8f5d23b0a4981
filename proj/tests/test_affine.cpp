#include <gtest/gtest.h>

#include "insdel/affine.hpp"
#include "insdel/editops.hpp"
#include "oracles.hpp"

using namespace insdel;

namespace {

Bits random_bits(Rng& rng, std::size_t n) {
  Bits b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng.below(2));
  return b;
}

/// Longest run of ones.
std::size_t longest_ones(std::span<const std::uint8_t> z) {
  std::size_t best = 0, run = 0;
  for (auto b : z) {
    run = b ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

const AffineCode& code40() {
  static const AffineCode c = AffineCode::build(0.1, 40, 1);
  return c;
}

}  // namespace

TEST(Params, Epsilon01N40) {
  const auto p = affine_params(0.1, 40);
  EXPECT_EQ(p.l0, 32u);
  EXPECT_EQ(p.t, 10u);
  EXPECT_EQ(p.e0, 4u);
  EXPECT_EQ(p.d0, 9u);
  EXPECT_EQ(p.m0, 32u);
  EXPECT_EQ(p.alphabet, 160000u);
  EXPECT_EQ(p.ls, 18u);
  EXPECT_EQ(p.l, 50u);
  EXPECT_EQ(p.content_bits, 55u);
  EXPECT_EQ(p.block_bits, 67u);
  EXPECT_EQ(p.n, 2680u);
  EXPECT_EQ(p.m, 1024u);
  EXPECT_EQ(p.kappa, 4u);
  // t divides l here, so the closed form is exact.
  EXPECT_NEAR(p.rate, p.rate_formula, 1e-12);
}

TEST(Params, RateFormulaBoundsExactRate) {
  for (double eps : {0.05, 0.13, 0.2, 0.3, 0.45}) {
    const auto p = affine_params(eps, 60);
    EXPECT_GE(p.rate, p.rate_formula - 1e-12) << eps;
    const double t = static_cast<double>(p.t);
    const double expect = static_cast<double>(p.m0) / 60.0 * p.l0 / ((p.l0 + p.ls) * (1.0 + 1.0 / t) + t + 2.0);
    EXPECT_NEAR(p.rate_formula, expect, 1e-12);
  }
}

TEST(Params, SweepMonotone) {
  // Below eps = 0.08 the 32-bit cap on l0 makes the rate wobble with t.
  double last_rate = 1, last_frac = 0;
  for (int k = 8; k <= 45; ++k) {
    const auto p = affine_params(k / 100.0, 100);
    const double frac = static_cast<double>(p.kappa) / static_cast<double>(p.n);
    EXPECT_LE(p.rate, last_rate + 1e-12) << "eps=" << k / 100.0;
    EXPECT_GE(frac, last_frac) << "eps=" << k / 100.0;
    last_rate = p.rate;
    last_frac = frac;
  }
}

TEST(Params, Rejected) {
  EXPECT_THROW(affine_params(0.0, 10), UsageError);
  EXPECT_THROW(affine_params(0.5, 10), UsageError);
  EXPECT_THROW(affine_params(0.1, (std::size_t{1} << 32) + 2), ParameterError);
}

TEST(Stuffing, ExampleAndInverse) {
  // t = 2: b1 b2 b3 b4 -> b1 b2 0 b3 b4 0; framed with 0 111.
  const Bits in{1, 1, 0, 1};
  EXPECT_EQ(stuff_bits(in, 2), (Bits{1, 1, 0, 0, 1, 0}));
  EXPECT_EQ(stuff_bits(Bits{1, 0, 1}, 2), (Bits{1, 0, 0, 1}));
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const auto b = random_bits(rng, rng.below(30));
    const std::size_t t = 1 + rng.below(5);
    const auto s = stuff_bits(b, t);
    EXPECT_EQ(s.size(), b.size() + b.size() / t);
    EXPECT_LE(longest_ones(s), t);
    EXPECT_EQ(unstuff_bits(s, t), b);
  }
  EXPECT_FALSE(unstuff_bits(Bits{1, 1, 1}, 2).has_value());
}

TEST(Encode, BlockLayout) {
  const auto& c = code40();
  const auto& p = c.params();
  Rng rng(2);
  const auto x = random_bits(rng, p.m);
  const auto z = c.encode(x);
  ASSERT_EQ(z.size(), p.n);
  const auto y = c.inner().encode([&] {
    std::vector<Symbol> s(p.m0);
    for (std::size_t i = 0; i < p.m0; ++i) s[i] = static_cast<Symbol>(read_value(std::span(x).subspan(i * p.l0, p.l0)));
    return s;
  }());
  for (std::size_t i = 0; i < p.n0; ++i) {
    const std::span<const std::uint8_t> zi(z.data() + i * p.block_bits, p.block_bits);
    EXPECT_EQ(zi[0], 0);
    for (std::size_t k = 1; k <= p.t + 1; ++k) EXPECT_EQ(zi[k], 1);
    const auto plain = unstuff_bits(zi.subspan(p.t + 2), p.t);
    ASSERT_TRUE(plain.has_value());
    EXPECT_EQ(read_value(std::span(*plain).first(p.ls)), c.sync().symbols[i]);
    EXPECT_EQ(read_value(std::span(*plain).subspan(p.ls)), y[i]);
  }
  EXPECT_EQ(c.encode(Bits(p.m, 0)), c.offset());
  EXPECT_THROW(c.encode(Bits(p.m - 1, 0)), UsageError);
}

TEST(Encode, AffineAndStuffingSafe) {
  const auto& c = code40();
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const auto x = random_bits(rng, c.params().m), x2 = random_bits(rng, c.params().m);
    Bits sum(x.size());
    for (std::size_t b = 0; b < x.size(); ++b) sum[b] = x[b] ^ x2[b];
    const auto z = c.encode(x), z2 = c.encode(x2), zs = c.encode(sum);
    for (std::size_t b = 0; b < z.size(); ++b) ASSERT_EQ(z[b] ^ z2[b] ^ c.offset()[b], zs[b]);
    for (const auto& blk : parse_blocks(z, c.params().t)) ASSERT_LE(longest_ones(blk), c.params().t);
  }
}

TEST(Parse, CleanAndBitFlip) {
  const auto& c = code40();
  const auto& p = c.params();
  Rng rng(4);
  const auto z = c.encode(random_bits(rng, p.m));
  const auto blocks = parse_blocks(z, p.t);
  ASSERT_EQ(blocks.size(), p.n0);
  for (std::size_t i = 0; i < p.n0; ++i) {
    const Bits expect(z.begin() + static_cast<std::ptrdiff_t>(i * p.block_bits + p.t + 2),
                      z.begin() + static_cast<std::ptrdiff_t>((i + 1) * p.block_bits));
    EXPECT_EQ(blocks[i], expect);
  }
  // Clearing a content 1 cannot create a boundary-length run.
  auto flipped = z;
  std::size_t pos = 5 * p.block_bits + p.t + 2;
  while (flipped[pos] == 0) ++pos;
  flipped[pos] = 0;
  const auto after = parse_blocks(flipped, p.t);
  ASSERT_EQ(after.size(), p.n0);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < p.n0; ++i) differ += after[i] != blocks[i] ? 1 : 0;
  EXPECT_LE(differ, 1u);
}

TEST(Parse, BoundaryDeletionsSmallCode) {
  const auto c = AffineCode::build(0.2, 5, 7);
  const auto& p = c.params();
  Rng rng(5);
  const auto z = c.encode(random_bits(rng, p.m));
  const auto clean = parse_blocks(z, p.t);
  for (std::size_t i = 0; i < p.n0; ++i) {
    for (std::size_t k = 1; k <= p.t + 1; ++k) {
      auto cut = z;
      cut.erase(cut.begin() + static_cast<std::ptrdiff_t>(i * p.block_bits + k));
      const auto got = parse_blocks(cut, p.t);
      EXPECT_GE(got.size() + 1, clean.size());
      EXPECT_LE(oracle::levenshtein(got, clean), 2u);
    }
  }
}

TEST(Parse, SingleEditDamageExhaustive) {
  const auto c = AffineCode::build(0.2, 6, 8);
  const auto& p = c.params();
  Rng rng(6);
  for (int word = 0; word < 3; ++word) {
    const auto z = c.encode(random_bits(rng, p.m));
    const auto clean = parse_blocks(z, p.t);
    for (std::size_t pos = 0; pos <= z.size(); ++pos) {
      if (pos < z.size()) {
        auto del = z;
        del.erase(del.begin() + static_cast<std::ptrdiff_t>(pos));
        ASSERT_LE(oracle::levenshtein(parse_blocks(del, p.t), clean), 2u) << "delete " << pos;
      }
      for (std::uint8_t bit : {0, 1}) {
        auto ins = z;
        ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(pos), bit);
        ASSERT_LE(oracle::levenshtein(parse_blocks(ins, p.t), clean), 2u) << "insert " << int(bit) << " at " << pos;
      }
    }
  }
}

TEST(Decode, CleanAndOffset) {
  const auto& c = code40();
  Rng rng(7);
  const auto x = random_bits(rng, c.params().m);
  EXPECT_EQ(c.decode(c.encode(x)), x);
  EXPECT_EQ(c.decode(c.offset()), Bits(c.params().m, 0));
  const auto d = c.decode_detailed(c.encode(x));
  EXPECT_EQ(d.blocks, 40u);
  EXPECT_EQ(d.malformed, 0u);
  EXPECT_EQ(d.erasures, 0u);
}

TEST(Decode, RoundTripWithinKappa) {
  const auto& c = code40();
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_bits(rng, c.params().m);
    const std::size_t k = 1 + rng.below(c.params().kappa), ins = rng.below(k + 1);
    const auto r = insdel_channel<std::uint8_t>(c.encode(x), ins, k - ins, 2, rng.next());
    ASSERT_EQ(c.decode(r), x) << "trial " << t << " k=" << k;
  }
}

TEST(Decode, GarbageIsTotal) {
  const auto& c = code40();
  EXPECT_NO_THROW(c.decode(Bits{}));
  EXPECT_NO_THROW(c.decode(Bits(500, 1)));
  Rng rng(9);
  EXPECT_NO_THROW(c.decode(random_bits(rng, 3000)));
}

TEST(Build, SyncMismatchRejected) {
  const auto p = affine_params(0.1, 40);
  EXPECT_THROW(AffineCode(p, construct_sync_string(10, 0.01, 1)), UsageError);
}
