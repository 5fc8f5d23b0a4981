#include <gtest/gtest.h>

#include "insdel/editops.hpp"
#include "insdel/linear_insdel.hpp"
#include "oracles.hpp"

using namespace insdel;

namespace {

LinearCode identity_code(FieldPtr f, std::size_t n) {
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 1;
  return LinearCode::from_generator({std::move(f), g});
}

std::vector<Symbol> random_message(const LinearCode& c, Rng& rng) {
  std::vector<Symbol> x(c.m());
  for (auto& s : x) s = static_cast<Symbol>(rng.below(c.field()->size()));
  return x;
}

std::vector<std::int64_t> random_positions(Rng& rng, std::size_t n, std::uint64_t max_gap) {
  std::vector<std::int64_t> p{0};
  for (std::size_t k = 0; k < n; ++k) p.push_back(p.back() + 1 + static_cast<std::int64_t>(rng.below(max_gap)));
  return p;
}

}  // namespace

TEST(Encode, IdentityInnerExample) {
  const InsdelCode code(identity_code(Field::prime(3), 3), {2, {1, 2, 1}}, 0);
  EXPECT_EQ(code.n(), 7u);
  EXPECT_EQ(code.encode(std::vector<Symbol>{1, 0, 2}), (std::vector<Symbol>{0, 1, 0, 0, 0, 0, 2}));
  EXPECT_EQ(code.encode(std::vector<Symbol>{0, 0, 0}), std::vector<Symbol>(7, 0));
  EXPECT_THROW(code.encode(std::vector<Symbol>{1, 2}), UsageError);
}

TEST(Encode, LengthAndLinearity) {
  const auto f = Field::binary(4);
  const auto code = monte_carlo_insdel(LinearCode::reed_solomon(f, 15, 7), 20, 3, 0.5);
  EXPECT_EQ(code.n(), static_cast<std::size_t>(code.positions().back()));
  EXPECT_EQ(code.kappa(), 2u);
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_message(code.inner(), rng), y = random_message(code.inner(), rng);
    const auto al = static_cast<Symbol>(rng.below(16)), be = static_cast<Symbol>(rng.below(16));
    std::vector<Symbol> mix(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) mix[k] = f->add(f->mul(al, x[k]), f->mul(be, y[k]));
    const auto zx = code.encode(x), zy = code.encode(y), zm = code.encode(mix);
    ASSERT_EQ(zx.size(), code.n());
    for (std::size_t k = 0; k < zm.size(); ++k) ASSERT_EQ(zm[k], f->add(f->mul(al, zx[k]), f->mul(be, zy[k])));
  }
}

TEST(Encode, SeparatorLengthMustMatch) {
  EXPECT_THROW(InsdelCode(identity_code(Field::prime(3), 3), {2, {1, 2}}, 0), UsageError);
  EXPECT_THROW(InsdelCode(identity_code(Field::prime(3), 3), {2, {1, 3, 1}}, 0), UsageError);
}

TEST(CostAndObj, Examples) {
  const std::vector<std::int64_t> p{0, 2, 5}, q{0, 2, 6};
  const std::vector<QMatch> one{{1, 1}};
  EXPECT_EQ(cost_and_obj(one, p, q), (std::pair<std::size_t, std::size_t>{0, 1}));
  const std::vector<QMatch> two{{1, 1}, {2, 2}};
  EXPECT_EQ(cost_and_obj(two, p, q), (std::pair<std::size_t, std::size_t>{1, 1}));
  EXPECT_EQ(cost_and_obj({}, p, q), (std::pair<std::size_t, std::size_t>{0, 0}));
  const std::vector<QMatch> bad{{2, 1}, {1, 2}};
  EXPECT_THROW(cost_and_obj(bad, p, q), UsageError);
}

TEST(MatchDp, OptimalAgainstBruteForce) {
  Rng rng(2);
  for (int t = 0; t < 400; ++t) {
    const auto p = random_positions(rng, 1 + rng.below(8), 3);
    const auto q = random_positions(rng, rng.below(9), 3);
    const auto w = match_dp(p, q);
    ASSERT_EQ(w.obj, oracle::max_obj_bruteforce(p, q));
    ASSERT_EQ(cost_and_obj(w.matches, p, q), (std::pair{w.cost, w.obj}));
    ASSERT_LE(w.matches.size(), std::min(p.size(), q.size()) - 1);
  }
}

TEST(MatchDp, Deterministic) {
  Rng rng(3);
  const auto p = random_positions(rng, 20, 4), q = random_positions(rng, 18, 4);
  EXPECT_EQ(match_dp(p, q).matches, match_dp(p, q).matches);
}

TEST(Decode, CleanWordMatchesEveryNonzero) {
  const auto code = monte_carlo_insdel(LinearCode::reed_solomon(Field::binary(4), 15, 7), 32, 5);
  Rng rng(4);
  const auto x = random_message(code.inner(), rng);
  const auto z = code.encode(x);
  const auto d = insdel_decode_detailed(code, z);
  const auto y = code.inner().encode(x);
  const auto tau = static_cast<std::size_t>(std::count_if(y.begin(), y.end(), [](Symbol s) { return s != 0; }));
  EXPECT_EQ(d.matching.obj, tau);
  EXPECT_EQ(d.unmatched_nonzeros, 0u);
  for (const auto& m : d.matching.matches) EXPECT_EQ(z[static_cast<std::size_t>(code.positions()[m.i]) - 1], y[m.i - 1]);
  EXPECT_EQ(d.message, x);
}

TEST(Decode, AllZerosAndEmpty) {
  const auto code = monte_carlo_insdel(LinearCode::reed_solomon(Field::binary(4), 15, 7), 32, 5);
  const std::vector<Symbol> zero(code.m(), 0);
  const auto d = insdel_decode_detailed(code, std::vector<Symbol>(code.n(), 0));
  EXPECT_TRUE(d.matching.matches.empty());
  EXPECT_EQ(d.matching.obj, 0u);
  EXPECT_EQ(d.message, zero);
  EXPECT_EQ(insdel_decode(code, std::vector<Symbol>{}), zero);
  EXPECT_THROW(insdel_decode(code, std::vector<Symbol>{99}), UsageError);
}

TEST(Decode, OtherCodewordDecodesToItself) {
  const auto code = monte_carlo_insdel(LinearCode::reed_solomon(Field::binary(4), 15, 7), 32, 6);
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_message(code.inner(), rng);
    EXPECT_EQ(insdel_decode(code, code.encode(x)), x);
  }
}

TEST(Decode, ExplicitRoundTripAndUnmatchedBound) {
  // RS(15, 5) over GF(16), kappa_C = 5, fraction 0.4 -> kappa = 2.
  const auto inst = explicit_rs_insdel(Field::binary(4), 15, 5, 0.4);
  const auto& code = inst.code;
  ASSERT_EQ(code.kappa(), 2u);
  EXPECT_LE(max_undesired(inst.separator.seq).count, explicit_lambda(5));
  Rng rng(6);
  for (int t = 0; t < 300; ++t) {
    const auto x = random_message(code.inner(), rng);
    const auto z = code.encode(x);
    const std::size_t k = 1 + rng.below(code.kappa());
    const std::size_t ins = rng.below(k + 1);
    const auto r = insdel_channel<Symbol>(z, ins, k - ins, 16, rng.next());
    const auto d = insdel_decode_detailed(code, r);
    ASSERT_EQ(d.message, x) << "trial " << t;
    ASSERT_LE(d.unmatched_nonzeros, 3 * k);
  }
}

TEST(Decode, ExplicitInstanceDistanceWitness) {
  // q^m = 64: every codeword pair is at edit distance >= 2 kappa + 1.
  const auto inst = explicit_rs_insdel(Field::binary(3), 4, 1, 1.0);
  const auto& code = inst.code;
  ASSERT_EQ(code.kappa(), 1u);
  std::vector<std::vector<Symbol>> words;
  for_each_message(8, code.m(), [&](const std::vector<Symbol>& x) { words.push_back(code.encode(x)); });
  EXPECT_GE(min_pairwise_edit_distance(words), 2 * code.kappa() + 1);
}

TEST(Systematic, RoundTripAndRate) {
  const SystematicInsdel sys(monte_carlo_insdel(LinearCode::reed_solomon(Field::binary(4), 15, 5), 64, 7, 0.4));
  EXPECT_EQ(sys.rate(), (std::pair<std::size_t, std::size_t>{5, sys.code().n() + 5}));
  Rng rng(7);
  const auto x = random_message(sys.code().inner(), rng);
  const auto e = sys.encode(x);
  ASSERT_EQ(e.size(), sys.n());
  EXPECT_TRUE(std::equal(x.begin(), x.end(), e.begin()));
  EXPECT_EQ(sys.decode(e), x);
  auto cut = e;
  cut.erase(cut.begin() + 2);
  EXPECT_EQ(sys.decode(cut), x);
  EXPECT_EQ(sys.decode(std::vector<Symbol>{1, 2}), std::vector<Symbol>(5, 0));
}

TEST(Params, RadiusAndLambda) {
  EXPECT_EQ(insdel_radius(10, 0.3), 3u);
  EXPECT_EQ(insdel_radius(100, 0.01), 1u);
  EXPECT_EQ(insdel_radius(10, 0.01), 0u);
  EXPECT_EQ(explicit_lambda(10), 2u);
  EXPECT_EQ(explicit_lambda(3), 1u);
}
