#pragma once

// Linear insdel code: the inner codeword y is spread out with a zero run
// S[i] of length a_i before each symbol, z = S[1] y_1 S[2] y_2 ... The decoder
// matches the template's ?-marks (the y slots) to the non-zero symbols of the
// received word, fills the marks and hands the result to the inner decoder.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "insdel/hamming.hpp"
#include "insdel/separator.hpp"

namespace insdel {

class InsdelCode {
 public:
  InsdelCode(LinearCode inner, SeparatorSequence sep, std::size_t kappa)
      : inner_(std::move(inner)), sep_(std::move(sep)), kappa_(kappa) {
    sep_.validate();
    if (sep_.n() != inner_.n()) throw UsageError("separator length must equal the inner block length");
    p_ = sep_.positions();
  }

  const LinearCode& inner() const { return inner_; }
  const SeparatorSequence& separator() const { return sep_; }
  std::size_t kappa() const { return kappa_; }
  std::size_t n() const { return static_cast<std::size_t>(p_.back()); }
  std::size_t m() const { return inner_.m(); }
  /// ?-mark positions, p[0] = 0 and p[i] the 1-based position of mark i.
  const std::vector<std::int64_t>& positions() const { return p_; }

  std::vector<Symbol> encode(std::span<const Symbol> x) const {
    const auto y = inner_.encode(x);
    std::vector<Symbol> z(n(), 0);
    for (std::size_t i = 0; i < y.size(); ++i) z[static_cast<std::size_t>(p_[i + 1]) - 1] = y[i];
    return z;
  }

 private:
  LinearCode inner_;
  SeparatorSequence sep_;
  std::size_t kappa_;
  std::vector<std::int64_t> p_;
};

/// kappa = floor(fraction * kappa_C).
inline std::size_t insdel_radius(std::size_t kappa_c, double fraction) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(kappa_c) + 1e-9));
}

/// Random separator with runs uniform on [1, a].
inline InsdelCode monte_carlo_insdel(LinearCode inner, std::uint64_t a, std::uint64_t seed, double fraction = 0.01) {
  auto sep = sample_separator(inner.n(), a, seed);
  const std::size_t kappa = insdel_radius(inner.kappa(), fraction);
  return {std::move(inner), std::move(sep), kappa};
}

/// Lambda' = floor(0.2 kappa_C), raised to 1 so the separator search is defined.
inline std::size_t explicit_lambda(std::size_t kappa_c) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(0.2 * static_cast<double>(kappa_c) + 1e-9)));
}

struct ExplicitInsdel {
  InsdelCode code;
  ExplicitSeparator separator;
};

/// RS(n_C, n_C - 2 kappa_C) over `field` with the explicit separator.
inline ExplicitInsdel explicit_rs_insdel(FieldPtr field, std::size_t n_c, std::size_t kappa_c, double fraction = 0.01,
                                        const ExplicitConfig& cfg = {}) {
  if (2 * kappa_c >= n_c) throw ParameterError("kappa_C too large for block length");
  auto inner = LinearCode::reed_solomon(std::move(field), n_c, n_c - 2 * kappa_c);
  auto sep = construct_explicit(n_c, explicit_lambda(kappa_c), cfg);
  InsdelCode code(std::move(inner), sep.seq, insdel_radius(kappa_c, fraction));
  return {std::move(code), std::move(sep)};
}

/// ?-mark i matched to the j-th non-zero of the received word (both 1-based).
struct QMatch {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const QMatch&, const QMatch&) = default;
};

struct QMatching {
  std::vector<QMatch> matches;
  std::size_t cost = 0;
  std::size_t obj = 0;
};

/// cost = number of matches whose gap to the previous match differs between
/// the two sides (p_0 = q_0 = 0); obj = |w| - cost.
inline std::pair<std::size_t, std::size_t> cost_and_obj(std::span<const QMatch> w, std::span<const std::int64_t> p,
                                                        std::span<const std::int64_t> q) {
  std::size_t cost = 0, pi = 0, pj = 0;
  for (const auto& m : w) {
    if (m.i <= pi || m.j <= pj) throw UsageError("matching is not monotone");
    if (m.i >= p.size() || m.j >= q.size()) throw UsageError("match index out of range");
    if (p[m.i] - p[pi] != q[m.j] - q[pj]) ++cost;
    pi = m.i;
    pj = m.j;
  }
  return {cost, w.size() - cost};
}

/// Maximizes obj over monotone matchings of marks p[1..] to non-zeros q[1..].
///
/// f(i, j) = best (obj, size) of matchings ending at (i, j). A match earns 1
/// exactly when its predecessor lies on the same chain p_i - q_j, so each cell
/// takes the better of the prefix max (+0) and its chain's running max (+1).
/// Among equal obj the larger matching wins, then the smallest predecessor.
inline QMatching match_dp(std::span<const std::int64_t> p, std::span<const std::int64_t> q) {
  const std::size_t nc = p.size() - 1, n1 = q.size() - 1, w = n1 + 1;
  QMatching out;
  if (nc == 0 || n1 == 0) return out;

  struct Val {
    std::int32_t obj = -1;
    std::int32_t len = 0;
    std::int32_t cell = -1;  // argmax cell (prefix/chain tables) or predecessor (cells)
  };
  // Strictly better, or equal value with a smaller cell.
  auto better = [](const Val& a, const Val& b) {
    if (a.obj != b.obj) return a.obj > b.obj;
    if (a.len != b.len) return a.len > b.len;
    return a.cell >= 0 && (b.cell < 0 || a.cell < b.cell);
  };

  std::vector<Val> f((nc + 1) * w), chain((nc + 1) * w);
  std::vector<std::int32_t> prev((nc + 1) * w, -1);
  std::vector<Val> pm(w), row(w);  // prefix max over rows < i, cols <= j
  std::unordered_map<std::int64_t, std::int32_t> last;
  last.reserve(nc + n1);

  for (std::size_t i = 1; i <= nc; ++i) {
    for (std::size_t j = 1; j <= n1; ++j) {
      const std::size_t cell = i * w + j;
      const auto it = last.find(p[i] - q[j]);
      if (it != last.end()) prev[cell] = it->second;

      Val best{p[i] == q[j] ? 1 : 0, 1, -1};
      if (pm[j - 1].obj >= 0) {
        const Val cand{pm[j - 1].obj, pm[j - 1].len + 1, pm[j - 1].cell};
        if (better(cand, best)) best = cand;
      }
      if (prev[cell] >= 0) {
        const Val& c = chain[static_cast<std::size_t>(prev[cell])];
        const Val cand{c.obj + 1, c.len + 1, c.cell};
        if (better(cand, best)) best = cand;
      }
      f[cell] = best;
      Val here{best.obj, best.len, static_cast<std::int32_t>(cell)};
      chain[cell] = here;
      if (prev[cell] >= 0 && better(chain[static_cast<std::size_t>(prev[cell])], here)) {
        chain[cell] = chain[static_cast<std::size_t>(prev[cell])];
      }
    }
    Val run;
    for (std::size_t j = 1; j <= n1; ++j) {
      const std::size_t cell = i * w + j;
      const Val here{f[cell].obj, f[cell].len, static_cast<std::int32_t>(cell)};
      if (better(here, run)) run = here;
      row[j] = run;
    }
    for (std::size_t j = 1; j <= n1; ++j)
      if (better(row[j], pm[j])) pm[j] = row[j];
    for (std::size_t j = 1; j <= n1; ++j) last[p[i] - q[j]] = static_cast<std::int32_t>(i * w + j);
  }

  Val top = pm[n1];
  // pm holds rows < nc + 1, i.e. every row, after the last iteration.
  std::vector<QMatch> rev;
  for (std::int32_t c = top.cell; c >= 0; c = f[static_cast<std::size_t>(c)].cell)
    rev.push_back({static_cast<std::size_t>(c) / w, static_cast<std::size_t>(c) % w});
  out.matches.assign(rev.rbegin(), rev.rend());
  std::tie(out.cost, out.obj) = cost_and_obj(out.matches, p, q);
  return out;
}

struct InsdelDecodeDetail {
  std::optional<std::vector<Symbol>> message;
  QMatching matching;
  std::vector<Symbol> filled;  // y' handed to the inner decoder
  std::size_t nonzeros = 0;
  std::size_t unmatched_nonzeros = 0;
};

inline InsdelDecodeDetail insdel_decode_detailed(const InsdelCode& code, std::span<const Symbol> received) {
  InsdelDecodeDetail out;
  std::vector<std::int64_t> q{0};
  for (std::size_t k = 0; k < received.size(); ++k) {
    if (!code.inner().field()->contains(received[k])) throw UsageError("received symbol outside the field");
    if (received[k] != 0) q.push_back(static_cast<std::int64_t>(k) + 1);
  }
  out.nonzeros = q.size() - 1;
  out.matching = match_dp(code.positions(), q);
  out.unmatched_nonzeros = out.nonzeros - out.matching.matches.size();
  out.filled.assign(code.inner().n(), 0);
  for (const auto& m : out.matching.matches) out.filled[m.i - 1] = received[static_cast<std::size_t>(q[m.j]) - 1];
  out.message = code.inner().decode(out.filled);
  return out;
}

inline std::optional<std::vector<Symbol>> insdel_decode(const InsdelCode& code, std::span<const Symbol> received) {
  return insdel_decode_detailed(code, received).message;
}

/// Systematic wrapper: Enc(x) = x followed by the insdel codeword of x. The
/// decoder discards the first m received symbols and decodes the rest.
class SystematicInsdel {
 public:
  explicit SystematicInsdel(InsdelCode code) : code_(std::move(code)) {}

  const InsdelCode& code() const { return code_; }
  std::size_t n() const { return code_.m() + code_.n(); }
  std::size_t m() const { return code_.m(); }
  /// Rate as the exact fraction m / (n + m).
  std::pair<std::size_t, std::size_t> rate() const { return {m(), n()}; }

  std::vector<Symbol> encode(std::span<const Symbol> x) const {
    auto z = code_.encode(x);
    std::vector<Symbol> out(x.begin(), x.end());
    out.insert(out.end(), z.begin(), z.end());
    return out;
  }

  std::optional<std::vector<Symbol>> decode(std::span<const Symbol> received) const {
    const std::size_t skip = std::min(received.size(), m());
    return insdel_decode(code_, received.subspan(skip));
  }

 private:
  InsdelCode code_;
};

}  // namespace insdel
