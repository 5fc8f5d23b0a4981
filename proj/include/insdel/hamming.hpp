#pragma once

// Linear block codes for Hamming errors: Reed-Solomon with Berlekamp-Welch
// errors-and-erasures decoding, exhaustive nearest-codeword decoding for tiny
// codes, and a binary concatenated code (RS outer, random binary inner).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "insdel/gf.hpp"
#include "insdel/matrix.hpp"
#include "insdel/rng.hpp"

namespace insdel {

/// m x n generator over a field: codeword = message * G.
struct GeneratorMatrix {
  FieldPtr field;
  Matrix entries;

  std::size_t m() const { return entries.rows(); }
  std::size_t n() const { return entries.cols(); }
};

/// Entries i.i.d. uniform over the field, driven only by `seed`.
inline GeneratorMatrix random_generator(FieldPtr field, std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw UsageError("generator dimensions must be positive");
  Rng rng(seed);
  Matrix g(m, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) g(r, c) = static_cast<Symbol>(rng.below(field->size()));
  return {std::move(field), std::move(g)};
}

/// Rewrites G = [M | V] as M^-1 G = [I | M^-1 V]. Returns nullopt when the
/// leftmost m x m block is singular (callers resample).
inline std::optional<GeneratorMatrix> systematic_transform(const GeneratorMatrix& g) {
  if (g.m() > g.n()) return std::nullopt;
  const auto m_inv = inverse(*g.field, g.entries.columns(0, g.m()));
  if (!m_inv) return std::nullopt;
  return GeneratorMatrix{g.field, mat_mul(*g.field, *m_inv, g.entries)};
}

enum class DecoderStrategy { reed_solomon, brute_force_nearest, errors_and_erasures_rs, concatenated };

inline std::string to_string(DecoderStrategy s) {
  switch (s) {
    case DecoderStrategy::reed_solomon: return "reed-solomon";
    case DecoderStrategy::brute_force_nearest: return "brute-force-nearest";
    case DecoderStrategy::errors_and_erasures_rs: return "errors-and-erasures-rs";
    case DecoderStrategy::concatenated: return "concatenated";
  }
  return "?";
}

inline DecoderStrategy strategy_from_string(const std::string& s) {
  if (s == "reed-solomon") return DecoderStrategy::reed_solomon;
  if (s == "brute-force-nearest") return DecoderStrategy::brute_force_nearest;
  if (s == "errors-and-erasures-rs") return DecoderStrategy::errors_and_erasures_rs;
  if (s == "concatenated") return DecoderStrategy::concatenated;
  throw UsageError("unknown decoder strategy '" + s + "'");
}

inline constexpr std::uint64_t kBruteForceLimit = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kExhaustiveCheckLimit = 4096;

/// q^m, saturating at 2^63.
inline std::uint64_t message_space_size(std::uint64_t q, std::size_t m) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (total > (std::uint64_t{1} << 63) / q) return std::uint64_t{1} << 63;
    total *= q;
  }
  return total;
}

/// Calls fn(message) for every message in F_q^m in odometer order.
template <class Fn>
void for_each_message(std::uint64_t q, std::size_t m, Fn&& fn) {
  std::vector<Symbol> x(m, 0);
  while (true) {
    fn(std::as_const(x));
    std::size_t i = 0;
    while (i < m && ++x[i] == q) x[i++] = 0;
    if (i == m) return;
  }
}

class LinearCode;

namespace detail {
struct ConcatParts;
}

/// An F_q-linear (n, m, d) block code with a decoder. Immutable once built.
class LinearCode {
 public:
  /// Reed-Solomon: message (x_0..x_{m-1}) is the polynomial sum x_i X^i,
  /// evaluated at `points` (defaults to the field elements 0, 1, ..., n-1).
  static LinearCode reed_solomon(FieldPtr field, std::size_t n, std::size_t m,
                                 std::vector<Symbol> points = {},
                                 DecoderStrategy strategy = DecoderStrategy::errors_and_erasures_rs) {
    if (m == 0 || m > n) throw UsageError("Reed-Solomon needs 0 < m <= n");
    if (field->size() < n) {
      throw ParameterError("Reed-Solomon length " + std::to_string(n) + " exceeds field size " +
                           std::to_string(field->size()));
    }
    if (strategy == DecoderStrategy::concatenated) throw UsageError("Reed-Solomon cannot use the concatenated decoder");
    if (points.empty()) {
      for (std::size_t i = 0; i < n; ++i) points.push_back(static_cast<Symbol>(i));
    }
    if (points.size() != n) throw UsageError("need exactly n evaluation points");
    for (std::size_t i = 0; i < n; ++i) {
      if (!field->contains(points[i])) throw UsageError("evaluation point outside the field");
      for (std::size_t j = 0; j < i; ++j)
        if (points[j] == points[i]) throw UsageError("repeated evaluation point " + std::to_string(points[i]));
    }
    Matrix g(m, n);
    for (std::size_t c = 0; c < n; ++c) {
      Symbol power = 1;
      for (std::size_t r = 0; r < m; ++r) {
        g(r, c) = power;
        power = field->mul(power, points[c]);
      }
    }
    LinearCode code;
    code.gen_ = {field, std::move(g)};
    code.d_ = n - m + 1;
    code.strategy_ = strategy;
    code.points_ = std::move(points);
    return code;
  }

  /// Code from an explicit generator. The rank is verified; when `d` is absent
  /// it is computed exhaustively, when given it is checked for q^m <= 4096.
  static LinearCode from_generator(GeneratorMatrix g, std::optional<std::size_t> d = std::nullopt,
                                   DecoderStrategy strategy = DecoderStrategy::brute_force_nearest) {
    if (g.m() == 0 || g.n() == 0) throw UsageError("generator dimensions must be positive");
    if (g.m() > g.n()) throw UsageError("generator has more rows than columns");
    if (rank(*g.field, g.entries) != g.m()) throw ParameterError("generator matrix is not full rank");
    if (strategy != DecoderStrategy::brute_force_nearest) {
      throw UsageError("explicit generators decode by brute force only");
    }
    LinearCode code;
    code.gen_ = std::move(g);
    code.strategy_ = strategy;
    const std::uint64_t space = message_space_size(code.field()->size(), code.m());
    if (!d) {
      if (space > kBruteForceLimit) throw CapacityError("cannot compute minimum distance exhaustively");
      code.d_ = code.min_distance_exhaustive();
    } else {
      code.d_ = *d;
      if (space <= kExhaustiveCheckLimit && code.min_distance_exhaustive() < *d) {
        throw ParameterError("generator does not achieve the declared distance");
      }
    }
    return code;
  }

  /// Binary concatenation of an outer RS code over GF(2^b) with the binary
  /// code `inner` of dimension b. The declared distance is 2k + 1 where
  /// k = floor((d_out - 1)(t_in + 1) / 2) is the number of bit errors the
  /// inner-then-outer decoder always corrects (t_in is the inner radius).
  static LinearCode concatenated(const LinearCode& outer, const LinearCode& inner);

  /// Convenience builder: RS(n_out, m_out) over GF(2^b) with the best of
  /// `tries` random binary [n_in, b] inner codes.
  static LinearCode binary_concatenated(unsigned b, std::size_t n_out, std::size_t m_out, std::size_t n_in,
                                        std::uint64_t seed, int tries = 32);

  const FieldPtr& field() const { return gen_.field; }
  const GeneratorMatrix& generator() const { return gen_; }
  std::size_t n() const { return gen_.n(); }
  std::size_t m() const { return gen_.m(); }
  std::size_t d() const { return d_; }
  std::size_t kappa() const { return d_ == 0 ? 0 : (d_ - 1) / 2; }
  DecoderStrategy strategy() const { return strategy_; }
  const std::vector<Symbol>& eval_points() const { return points_; }
  const detail::ConcatParts* concat_parts() const { return concat_.get(); }

  std::vector<Symbol> encode(std::span<const Symbol> x) const {
    if (x.size() != m()) {
      throw UsageError("message length " + std::to_string(x.size()) + " != " + std::to_string(m()));
    }
    for (Symbol s : x)
      if (!field()->contains(s)) throw UsageError("message symbol outside the field");
    return vec_mul(*field(), x, gen_.entries);
  }

  /// Decodes `received`, skipping positions flagged in `erasures`. Succeeds when
  /// 2 * errors + erasures <= d - 1; otherwise returns nullopt (or, past that
  /// radius, possibly a different message).
  std::optional<std::vector<Symbol>> decode(std::span<const Symbol> received,
                                            std::span<const bool> erasures = {}) const;

  /// Exhaustive nearest codeword within the unique-decoding radius.
  std::optional<std::vector<Symbol>> decode_brute_force(std::span<const Symbol> received,
                                                        std::span<const bool> erasures = {}) const {
    if (message_space_size(field()->size(), m()) > kBruteForceLimit) {
      throw CapacityError("brute-force decoding needs q^m <= 2^20");
    }
    std::size_t erased = 0;
    for (bool e : erasures) erased += e ? 1 : 0;
    std::optional<std::vector<Symbol>> best;
    std::size_t best_dist = SIZE_MAX;
    for_each_message(field()->size(), m(), [&](const std::vector<Symbol>& x) {
      const auto c = vec_mul(*field(), x, gen_.entries);
      std::size_t dist = 0;
      for (std::size_t i = 0; i < n() && dist < best_dist; ++i)
        if (!(erasures.size() == n() && erasures[i]) && c[i] != received[i]) ++dist;
      if (dist < best_dist) {
        best_dist = dist;
        best = x;
      }
    });
    if (!best || d_ == 0 || 2 * best_dist + erased > d_ - 1) return std::nullopt;
    return best;
  }

  /// Minimum Hamming weight over nonzero codewords, by enumeration.
  std::size_t min_distance_exhaustive() const {
    if (message_space_size(field()->size(), m()) > kBruteForceLimit) {
      throw CapacityError("exhaustive distance needs q^m <= 2^20");
    }
    std::size_t best = n();
    for_each_message(field()->size(), m(), [&](const std::vector<Symbol>& x) {
      bool zero = true;
      for (Symbol s : x) zero = zero && s == 0;
      if (zero) return;
      const auto c = vec_mul(*field(), x, gen_.entries);
      std::size_t w = 0;
      for (Symbol s : c) w += s != 0 ? 1 : 0;
      best = std::min(best, w);
    });
    return best;
  }

 private:
  std::optional<std::vector<Symbol>> decode_berlekamp_welch(std::span<const Symbol> received,
                                                            std::span<const bool> erasures) const;
  std::optional<std::vector<Symbol>> decode_concatenated(std::span<const Symbol> received) const;

  GeneratorMatrix gen_;
  std::size_t d_ = 0;
  DecoderStrategy strategy_ = DecoderStrategy::brute_force_nearest;
  std::vector<Symbol> points_;
  std::shared_ptr<const detail::ConcatParts> concat_;
};

namespace detail {
struct ConcatParts {
  LinearCode outer;
  LinearCode inner;
  unsigned bits = 0;
};
}  // namespace detail

inline std::optional<std::vector<Symbol>> LinearCode::decode(std::span<const Symbol> received,
                                                             std::span<const bool> erasures) const {
  if (received.size() != n()) {
    throw UsageError("received length " + std::to_string(received.size()) + " != " + std::to_string(n()));
  }
  if (!erasures.empty() && erasures.size() != n()) throw UsageError("erasure mask length must equal n");
  for (Symbol s : received)
    if (!field()->contains(s)) throw UsageError("received symbol outside the field");
  switch (strategy_) {
    case DecoderStrategy::brute_force_nearest: return decode_brute_force(received, erasures);
    case DecoderStrategy::concatenated: return decode_concatenated(received);
    case DecoderStrategy::reed_solomon:
    case DecoderStrategy::errors_and_erasures_rs: {
      // Plain RS ignores the mask and treats every position as received.
      const auto mask = strategy_ == DecoderStrategy::reed_solomon ? std::span<const bool>{} : erasures;
      auto result = decode_berlekamp_welch(received, mask);
      if (!result && message_space_size(field()->size(), m()) <= kExhaustiveCheckLimit) {
        result = decode_brute_force(received, mask);
      }
      return result;
    }
  }
  return std::nullopt;
}

inline std::optional<std::vector<Symbol>> LinearCode::decode_berlekamp_welch(std::span<const Symbol> received,
                                                                             std::span<const bool> erasures) const {
  const Field& f = *field();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n(); ++i)
    if (erasures.empty() || !erasures[i]) kept.push_back(i);
  if (kept.size() < m()) return std::nullopt;
  const std::size_t e = (kept.size() - m()) / 2;

  // Unknowns: Q_0..Q_{m+e-1}, E_0..E_{e-1}; E is monic of degree e.
  // Q(a) - r E(a) = 0 at every kept point.
  const std::size_t nq = m() + e;
  Matrix a(kept.size(), nq + e);
  std::vector<Symbol> rhs(kept.size());
  for (std::size_t row = 0; row < kept.size(); ++row) {
    const Symbol x = points_[kept[row]];
    const Symbol r = received[kept[row]];
    Symbol power = 1;
    for (std::size_t k = 0; k < nq + e || k <= e; ++k) {
      if (k < nq) a(row, k) = power;
      if (k < e) a(row, nq + k) = f.neg(f.mul(r, power));
      if (k == e) rhs[row] = f.mul(r, power);
      power = f.mul(power, x);
    }
  }
  const auto sol = solve(f, a, rhs);
  if (!sol) return std::nullopt;

  // Polynomial long division Q / E.
  std::vector<Symbol> rem(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(nq));
  std::vector<Symbol> e_poly(sol->begin() + static_cast<std::ptrdiff_t>(nq), sol->end());
  e_poly.push_back(1);
  std::vector<Symbol> quot(nq >= e + 1 ? nq - e : 1, 0);
  for (std::size_t k = nq; k-- > e;) {
    const Symbol coef = rem[k];
    if (coef == 0) continue;
    quot[k - e] = coef;
    for (std::size_t j = 0; j <= e; ++j) rem[k - e + j] = f.sub(rem[k - e + j], f.mul(coef, e_poly[j]));
  }
  for (std::size_t k = 0; k < e && k < rem.size(); ++k)
    if (rem[k] != 0) return std::nullopt;
  quot.resize(m(), 0);

  // Confirm the decoded codeword is inside the radius.
  const auto c = vec_mul(f, quot, gen_.entries);
  std::size_t errors = 0;
  for (std::size_t i : kept) errors += c[i] != received[i] ? 1 : 0;
  if (2 * errors + (n() - kept.size()) > d_ - 1) return std::nullopt;
  return quot;
}

inline LinearCode LinearCode::concatenated(const LinearCode& outer, const LinearCode& inner) {
  if (!outer.field()->is_binary()) throw UsageError("outer code must be over GF(2^b)");
  if (inner.field()->size() != 2) throw UsageError("inner code must be binary");
  const unsigned b = outer.field()->spec().degree();
  if (inner.m() != b) throw UsageError("inner dimension must equal the outer symbol width");
  const Field& f2 = *inner.field();
  const std::size_t rows = outer.m() * b;
  const std::size_t cols = outer.n() * inner.n();
  Matrix g(rows, cols);
  std::vector<Symbol> unit(outer.m(), 0);
  for (std::size_t i = 0; i < outer.m(); ++i) {
    for (unsigned beta = 0; beta < b; ++beta) {
      unit.assign(outer.m(), 0);
      unit[i] = Symbol{1} << beta;
      const auto outer_cw = outer.encode(unit);
      for (std::size_t k = 0; k < outer.n(); ++k) {
        std::vector<Symbol> bits(b);
        for (unsigned t = 0; t < b; ++t) bits[t] = (outer_cw[k] >> t) & 1u;
        const auto inner_cw = vec_mul(f2, bits, inner.generator().entries);
        for (std::size_t c = 0; c < inner.n(); ++c) g(i * b + beta, k * inner.n() + c) = inner_cw[c];
      }
    }
  }
  LinearCode code;
  code.gen_ = {inner.field(), std::move(g)};
  code.d_ = 2 * ((outer.d() - 1) * (inner.kappa() + 1) / 2) + 1;
  code.strategy_ = DecoderStrategy::concatenated;
  code.concat_ = std::make_shared<const detail::ConcatParts>(detail::ConcatParts{outer, inner, b});
  return code;
}

inline LinearCode LinearCode::binary_concatenated(unsigned b, std::size_t n_out, std::size_t m_out,
                                                  std::size_t n_in, std::uint64_t seed, int tries) {
  auto gf2 = Field::prime(2);
  std::optional<LinearCode> best_inner;
  Rng rng(seed);
  for (int t = 0; t < tries; ++t) {
    const auto g = random_generator(gf2, b, n_in, rng.next());
    if (rank(*gf2, g.entries) != b) continue;
    auto candidate = LinearCode::from_generator(g);
    if (!best_inner || candidate.d() > best_inner->d()) best_inner = std::move(candidate);
  }
  if (!best_inner) throw ConstructionError("no full-rank inner code found");
  const auto outer = LinearCode::reed_solomon(Field::binary(b), n_out, m_out);
  return concatenated(outer, *best_inner);
}

inline std::optional<std::vector<Symbol>> LinearCode::decode_concatenated(std::span<const Symbol> received) const {
  const auto& parts = *concat_;
  const std::size_t n_in = parts.inner.n();
  std::vector<Symbol> outer_word(parts.outer.n(), 0);
  std::unique_ptr<bool[]> erased(new bool[parts.outer.n()]());
  for (std::size_t k = 0; k < parts.outer.n(); ++k) {
    const auto block = received.subspan(k * n_in, n_in);
    const auto bits = parts.inner.decode_brute_force(block);
    if (!bits) {
      erased[k] = true;
      continue;
    }
    Symbol sym = 0;
    for (unsigned t = 0; t < parts.bits; ++t) sym |= (*bits)[t] << t;
    outer_word[k] = sym;
  }
  const auto outer_msg =
      parts.outer.decode(outer_word, std::span<const bool>(erased.get(), parts.outer.n()));
  if (!outer_msg) return std::nullopt;
  std::vector<Symbol> out(m(), 0);
  for (std::size_t i = 0; i < parts.outer.m(); ++i)
    for (unsigned t = 0; t < parts.bits; ++t) out[i * parts.bits + t] = ((*outer_msg)[i] >> t) & 1u;
  return out;
}

}  // namespace insdel
