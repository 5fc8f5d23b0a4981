#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "insdel/hamming.hpp"
#include "oracles.hpp"

using namespace insdel;

namespace {

std::vector<std::vector<Symbol>> codewords(const LinearCode& c) {
  std::vector<std::vector<Symbol>> out;
  for_each_message(c.field()->size(), c.m(), [&](const std::vector<Symbol>& x) { out.push_back(c.encode(x)); });
  return out;
}

/// Nearest codeword by scanning every message, written without the library decoder.
std::optional<std::vector<Symbol>> nearest(const LinearCode& c, const std::vector<Symbol>& r) {
  std::optional<std::vector<Symbol>> best;
  std::size_t best_d = SIZE_MAX, ties = 0;
  for_each_message(c.field()->size(), c.m(), [&](const std::vector<Symbol>& x) {
    const auto d = oracle::hamming(c.encode(x), r);
    if (d < best_d) {
      best_d = d;
      best = x;
      ties = 1;
    } else if (d == best_d) {
      ++ties;
    }
  });
  if (ties != 1) return std::nullopt;
  return best;
}

}  // namespace

TEST(ReedSolomon, EncodesPolynomialEvaluations) {
  const auto rs = LinearCode::reed_solomon(Field::prime(5), 4, 2, {0, 1, 2, 3});
  EXPECT_EQ(rs.encode(std::vector<Symbol>{1, 1}), (std::vector<Symbol>{1, 2, 3, 4}));
  EXPECT_EQ(rs.d(), 3u);
  EXPECT_EQ(rs.kappa(), 1u);
}

TEST(ReedSolomon, ConstantPolynomial) {
  const auto rs = LinearCode::reed_solomon(Field::prime(7), 5, 1);
  EXPECT_EQ(rs.encode(std::vector<Symbol>{4}), std::vector<Symbol>(5, 4));
}

TEST(ReedSolomon, DesignedDistance) {
  EXPECT_EQ(LinearCode::reed_solomon(Field::prime(7), 5, 3).d(), 3u);
}

TEST(ReedSolomon, MatchesHornerEvaluation) {
  const auto f = Field::binary(6);
  std::vector<Symbol> pts;
  for (Symbol v = 5; v < 25; ++v) pts.push_back(v);
  const auto rs = LinearCode::reed_solomon(f, 20, 7, pts);
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Symbol> x(7);
    for (auto& s : x) s = static_cast<Symbol>(rng.below(64));
    const auto y = rs.encode(x);
    for (std::size_t i = 0; i < pts.size(); ++i) ASSERT_EQ(y[i], oracle::poly_eval(*f, x, pts[i]));
  }
}

TEST(ReedSolomon, ParameterChecks) {
  EXPECT_THROW(LinearCode::reed_solomon(Field::prime(5), 6, 2), ParameterError);
  EXPECT_THROW(LinearCode::reed_solomon(Field::prime(7), 3, 2, {1, 1, 2}), UsageError);
  EXPECT_THROW(LinearCode::reed_solomon(Field::prime(7), 3, 4), UsageError);
  EXPECT_THROW(LinearCode::reed_solomon(Field::prime(7), 3, 0), UsageError);
}

TEST(ReedSolomon, MinimumDistanceExhaustive) {
  for (auto [q, n, m] : {std::tuple{5u, 4u, 2u}, std::tuple{7u, 6u, 3u}, std::tuple{8u, 7u, 3u}, std::tuple{16u, 10u, 3u}}) {
    const auto f = q == 8 || q == 16 ? Field::binary(q == 8 ? 3 : 4) : Field::prime(q);
    const auto rs = LinearCode::reed_solomon(f, n, m);
    const auto words = codewords(rs);
    std::size_t best = SIZE_MAX;
    for (std::size_t a = 0; a < words.size(); ++a)
      for (std::size_t b = a + 1; b < words.size(); ++b) best = std::min(best, oracle::hamming(words[a], words[b]));
    EXPECT_EQ(best, n - m + 1) << "q=" << q;
    EXPECT_EQ(rs.min_distance_exhaustive(), n - m + 1);
  }
}

TEST(Encode, Linearity) {
  const auto f = Field::prime(11);
  const auto code = LinearCode::from_generator(random_generator(f, 3, 8, 5));
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    std::vector<Symbol> x(3), y(3), combo(3);
    const auto al = static_cast<Symbol>(rng.below(11)), be = static_cast<Symbol>(rng.below(11));
    for (std::size_t i = 0; i < 3; ++i) {
      x[i] = static_cast<Symbol>(rng.below(11));
      y[i] = static_cast<Symbol>(rng.below(11));
      combo[i] = f->add(f->mul(al, x[i]), f->mul(be, y[i]));
    }
    const auto ex = code.encode(x), ey = code.encode(y), ec = code.encode(combo);
    for (std::size_t k = 0; k < 8; ++k) ASSERT_EQ(ec[k], f->add(f->mul(al, ex[k]), f->mul(be, ey[k])));
  }
  EXPECT_EQ(code.encode(std::vector<Symbol>(3, 0)), std::vector<Symbol>(8, 0));
  EXPECT_THROW(code.encode(std::vector<Symbol>(2, 0)), UsageError);
}

TEST(Decode, SingleErrorMatchesBruteForceOracle) {
  const auto rs = LinearCode::reed_solomon(Field::prime(5), 4, 2, {0, 1, 2, 3});
  const std::vector<Symbol> x{1, 1};
  for (std::size_t pos = 0; pos < 4; ++pos) {
    for (Symbol v = 0; v < 5; ++v) {
      auto y = rs.encode(x);
      y[pos] = v;
      const auto got = rs.decode(y);
      ASSERT_TRUE(got.has_value());
      EXPECT_EQ(*got, x);
      EXPECT_EQ(nearest(rs, y), x);
    }
  }
}

TEST(Decode, ExhaustiveErrorPatternsWithinRadius) {
  // n = 7, m = 3 over GF(8): d = 5, every pattern of <= 2 errors.
  const auto rs = LinearCode::reed_solomon(Field::binary(3), 7, 3);
  Rng rng(17);
  for (int t = 0; t < 4; ++t) {
    std::vector<Symbol> x(3);
    for (auto& s : x) s = static_cast<Symbol>(rng.below(8));
    const auto y = rs.encode(x);
    for (std::size_t a = 0; a < 7; ++a) {
      for (std::size_t b = a; b < 7; ++b) {
        for (Symbol ea = 1; ea < 8; ++ea) {
          auto r = y;
          r[a] ^= ea;
          if (b != a) r[b] ^= static_cast<Symbol>(1 + rng.below(7));
          const auto got = rs.decode(r);
          ASSERT_TRUE(got.has_value());
          ASSERT_EQ(*got, x);
        }
      }
    }
  }
}

TEST(Decode, ErrorsAndErasures) {
  const auto f = Field::binary(6);
  const auto rs = LinearCode::reed_solomon(f, 40, 20);  // d = 21
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<Symbol> x(20);
    for (auto& s : x) s = static_cast<Symbol>(rng.below(64));
    auto r = rs.encode(x);
    const auto erasures = static_cast<std::size_t>(rng.below(21));
    const std::size_t errors = (20 - erasures) / 2;
    std::vector<std::size_t> pos(40);
    for (std::size_t i = 0; i < 40; ++i) pos[i] = i;
    for (std::size_t i = 0; i < 40; ++i) std::swap(pos[i], pos[i + rng.below(40 - i)]);
    std::unique_ptr<bool[]> mask(new bool[40]());
    for (std::size_t k = 0; k < erasures; ++k) {
      mask[pos[k]] = true;
      r[pos[k]] = static_cast<Symbol>(rng.below(64));
    }
    for (std::size_t k = erasures; k < erasures + errors; ++k) r[pos[k]] ^= static_cast<Symbol>(1 + rng.below(63));
    const auto got = rs.decode(r, std::span<const bool>(mask.get(), 40));
    ASSERT_TRUE(got.has_value()) << "erasures " << erasures << " errors " << errors;
    ASSERT_EQ(*got, x);
  }
}

TEST(Decode, BeyondRadiusIsFlagged) {
  // ceil(d/2) errors are outside the guarantee: the decoder either fails or
  // returns a message other than the transmitted one.
  const auto rs = LinearCode::reed_solomon(Field::prime(7), 6, 2);  // d = 5
  Rng rng(8);
  std::size_t outside = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<Symbol> x{static_cast<Symbol>(rng.below(7)), static_cast<Symbol>(rng.below(7))};
    auto r = rs.encode(x);
    for (std::size_t k = 0; k < 3; ++k) r[k] = (r[k] + 1 + static_cast<Symbol>(rng.below(6))) % 7;
    const auto got = rs.decode(r);
    if (!got || *got != x) ++outside;
    if (got) {
      EXPECT_LE(oracle::hamming(rs.encode(*got), r), 2u);
    }
  }
  EXPECT_GT(outside, 0u);
}

TEST(Decode, LengthChecks) {
  const auto rs = LinearCode::reed_solomon(Field::prime(5), 4, 2);
  EXPECT_THROW(rs.decode(std::vector<Symbol>(3, 0)), UsageError);
}

TEST(BruteForce, CapacityLimit) {
  const auto code = LinearCode::reed_solomon(Field::binary(8), 10, 3, {}, DecoderStrategy::errors_and_erasures_rs);
  EXPECT_THROW(code.decode_brute_force(std::vector<Symbol>(10, 0)), CapacityError);
  const auto small = LinearCode::from_generator(random_generator(Field::prime(2), 4, 10, 2));
  const auto y = small.encode(std::vector<Symbol>{1, 0, 1, 1});
  EXPECT_EQ(small.decode(y), (std::vector<Symbol>{1, 0, 1, 1}));
}

TEST(BruteForce, AgreesWithOracleOnRandomBinaryCode) {
  std::uint64_t seed = 11;
  while (LinearCode::from_generator(random_generator(Field::prime(2), 4, 12, seed)).d() < 3) ++seed;
  const auto code = LinearCode::from_generator(random_generator(Field::prime(2), 4, 12, seed));
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    std::vector<Symbol> r(12);
    for (auto& s : r) s = static_cast<Symbol>(rng.below(2));
    const auto got = code.decode(r);
    const auto ref = nearest(code, r);
    if (got) {
      ASSERT_TRUE(ref.has_value());
      EXPECT_EQ(*got, *ref);
      EXPECT_LE(2 * oracle::hamming(code.encode(*got), r), code.d() - 1);
    }
  }
}

TEST(FromGenerator, RejectsRankDeficientAndFalseDistance) {
  Matrix g(2, 4);
  g(0, 0) = 1;
  g(1, 0) = 1;
  EXPECT_THROW(LinearCode::from_generator({Field::prime(2), g}), ParameterError);
  const auto good = random_generator(Field::prime(2), 3, 6, 7);
  const auto real = LinearCode::from_generator(good);
  EXPECT_THROW(LinearCode::from_generator(good, real.d() + 1), ParameterError);
}

TEST(RandomGenerator, Deterministic) {
  const auto f = Field::prime(13);
  EXPECT_EQ(random_generator(f, 4, 9, 42).entries, random_generator(f, 4, 9, 42).entries);
  EXPECT_FALSE(random_generator(f, 4, 9, 42).entries == random_generator(f, 4, 9, 43).entries);
  EXPECT_THROW(random_generator(f, 0, 9, 1), UsageError);
}

TEST(RandomGenerator, UniformSymbols) {
  const auto f = Field::prime(7);
  const auto g = random_generator(f, 100, 100, 99);
  std::vector<std::size_t> counts(7, 0);
  for (std::size_t r = 0; r < 100; ++r)
    for (std::size_t c = 0; c < 100; ++c) ++counts[g.entries(r, c)];
  EXPECT_TRUE(oracle::chi_square_within(oracle::chi_square_uniform(counts), 6, 5.0));
}

TEST(Systematic, IdentityLeftBlockUnchanged) {
  const auto f = Field::prime(5);
  Matrix g(2, 4);
  g(0, 0) = 1;
  g(1, 1) = 1;
  g(0, 2) = 3;
  g(1, 3) = 4;
  const auto s = systematic_transform({f, g});
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->entries, g);
}

TEST(Systematic, SingularLeftBlockFails) {
  auto g = random_generator(Field::prime(3), 3, 6, 1);
  for (std::size_t r = 0; r < 3; ++r) g.entries(r, 0) = 0;
  EXPECT_FALSE(systematic_transform(g).has_value());
}

TEST(Systematic, PreservesCodewordSet) {
  const auto f = Field::prime(3);
  int done = 0;
  for (std::uint64_t seed = 0; done < 20; ++seed) {
    const auto g = random_generator(f, 3, 7, seed);
    const auto s = systematic_transform(g);
    if (!s) continue;
    ++done;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) ASSERT_EQ(s->entries(r, c), r == c ? 1u : 0u);
    std::set<std::vector<Symbol>> a, b;
    for_each_message(3, 3, [&](const std::vector<Symbol>& x) {
      a.insert(vec_mul(*f, x, g.entries));
      b.insert(vec_mul(*f, x, s->entries));
    });
    EXPECT_EQ(a, b);
  }
}

TEST(Systematic, FullRankRateAboveQuarter) {
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    ok += systematic_transform(random_generator(Field::prime(2), 4, 8, seed)).has_value() ? 1 : 0;
  EXPECT_GE(static_cast<double>(ok) / 1000.0, 0.25);
}

TEST(Concatenated, CorrectsGuaranteedBitErrors) {
  const auto c = LinearCode::binary_concatenated(4, 15, 7, 12, 3);
  ASSERT_EQ(c.m(), 28u);
  ASSERT_EQ(c.n(), 180u);
  const auto& parts = *c.concat_parts();
  EXPECT_EQ(c.d(), 2 * ((parts.outer.d() - 1) * (parts.inner.kappa() + 1) / 2) + 1);
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    std::vector<Symbol> x(28);
    for (auto& s : x) s = static_cast<Symbol>(rng.below(2));
    auto r = c.encode(x);
    std::vector<std::size_t> pos(r.size());
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
    for (std::size_t i = 0; i < c.kappa(); ++i) {
      std::swap(pos[i], pos[i + rng.below(pos.size() - i)]);
      r[pos[i]] ^= 1;
    }
    const auto got = c.decode(r);
    ASSERT_TRUE(got.has_value());
    ASSERT_EQ(*got, x);
  }
}

TEST(Concatenated, IsLinearOverGF2) {
  const auto c = LinearCode::binary_concatenated(3, 7, 3, 9, 5);
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    std::vector<Symbol> x(c.m()), y(c.m()), s(c.m());
    for (std::size_t i = 0; i < c.m(); ++i) {
      x[i] = static_cast<Symbol>(rng.below(2));
      y[i] = static_cast<Symbol>(rng.below(2));
      s[i] = x[i] ^ y[i];
    }
    const auto ex = c.encode(x), ey = c.encode(y), es = c.encode(s);
    for (std::size_t k = 0; k < c.n(); ++k) ASSERT_EQ(es[k], ex[k] ^ ey[k]);
  }
}

TEST(Strategy, RoundTripNames) {
  for (auto s : {DecoderStrategy::reed_solomon, DecoderStrategy::brute_force_nearest,
                 DecoderStrategy::errors_and_erasures_rs, DecoderStrategy::concatenated}) {
    EXPECT_EQ(strategy_from_string(to_string(s)), s);
  }
  EXPECT_THROW(strategy_from_string("viterbi"), UsageError);
}
