#pragma once

// Synchronization separator sequences: run lengths a_1..a_n of zero runs,
// the exact undesired-match verifier, the windowed local check, and the
// explicit seed search over the powering generator.
//
// Positions p_i = sum_{k<=i} (a_k + 1), p_0 = 0. In a self-matching
// (i_1, j_1), (i_2, j_2), ... a match (i, j) is undesired when i != j and
// p_i - p_i' = p_j - p_j' for the previous match (i', j') (first match: p_i = p_j).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "insdel/errors.hpp"
#include "insdel/prg.hpp"
#include "insdel/rng.hpp"

namespace insdel {

struct SeparatorSequence {
  std::uint64_t a = 1;
  std::vector<std::uint32_t> runs;

  std::size_t n() const { return runs.size(); }

  /// p[0] = 0, p[i] for i = 1..n.
  std::vector<std::int64_t> positions() const {
    std::vector<std::int64_t> p(runs.size() + 1, 0);
    for (std::size_t i = 0; i < runs.size(); ++i) p[i + 1] = p[i] + runs[i] + 1;
    return p;
  }

  std::uint64_t template_length() const { return static_cast<std::uint64_t>(positions().back()); }

  void validate() const {
    if (a < 1) throw UsageError("separator bound a must be >= 1");
    for (auto r : runs)
      if (r < 1 || r > a) throw UsageError("run length " + std::to_string(r) + " outside [1, a]");
  }

  friend bool operator==(const SeparatorSequence&, const SeparatorSequence&) = default;
};

inline SeparatorSequence sample_separator(std::size_t n, std::uint64_t a, std::uint64_t seed) {
  if (n < 1 || a < 1) throw UsageError("sample_separator needs n >= 1 and a >= 1");
  Rng rng(seed);
  SeparatorSequence s{a, std::vector<std::uint32_t>(n)};
  for (auto& r : s.runs) r = static_cast<std::uint32_t>(1 + rng.below(a));
  return s;
}

/// One match of a self-matching, 1-based indices.
struct SelfMatch {
  std::size_t i = 0;
  std::size_t j = 0;
  bool undesired = false;

  friend bool operator==(const SelfMatch&, const SelfMatch&) = default;
};

/// Undesired count of a given monotone self-matching; `origin` is the virtual
/// match preceding the first one ((0, 0) for whole-sequence matchings).
inline std::size_t count_undesired(const std::vector<std::int64_t>& p, std::vector<SelfMatch>& w,
                                   std::pair<std::size_t, std::size_t> origin = {0, 0}) {
  std::size_t count = 0;
  auto [pi, pj] = origin;
  for (auto& m : w) {
    if (m.i <= pi || m.j <= pj) throw UsageError("matching is not monotone");
    m.undesired = m.i != m.j && p[m.i] - p[pi] == p[m.j] - p[pj];
    count += m.undesired ? 1 : 0;
    pi = m.i;
    pj = m.j;
  }
  return count;
}

namespace detail {

/// prev[i * (n + 1) + j] = the cell (i', j') with the largest i' < i on the
/// same difference chain p_i' - p_j' = p_i - p_j, or -1.
inline std::vector<std::int32_t> chain_predecessors(const std::vector<std::int64_t>& p) {
  const std::size_t n = p.size() - 1, w = n + 1;
  std::vector<std::int32_t> prev(w * w, -1);
  std::unordered_map<std::int64_t, std::int32_t> last;
  last.reserve(n * n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const auto it = last.find(p[i] - p[j]);
      if (it != last.end()) prev[i * w + j] = it->second;
    }
    for (std::size_t j = 1; j <= n; ++j) last[p[i] - p[j]] = static_cast<std::int32_t>(i * w + j);
  }
  return prev;
}

}  // namespace detail

struct UndesiredResult {
  std::size_t count = 0;
  /// A self-matching achieving `count` (or exceeding the stop limit).
  std::vector<SelfMatch> witness;
  bool stopped_early = false;
};

inline constexpr std::size_t kVerifierBudget = 200;

/// Exact maximum number of undesired matches over all self-matchings.
///
/// g(i, j) = best count of matchings ending at (i, j). The +1 transition only
/// fires from cells on the same difference chain, so the recurrence splits
/// into a prefix max (the +0 case) and a running max along each chain.
/// With `stop_above`, returns as soon as some matching exceeds it.
inline UndesiredResult max_undesired(const SeparatorSequence& seq, std::size_t budget = kVerifierBudget,
                                     std::optional<std::size_t> stop_above = std::nullopt) {
  const std::size_t n = seq.n();
  if (n > budget) {
    throw CapacityError("max_undesired limited to n <= " + std::to_string(budget) + ", got " + std::to_string(n));
  }
  UndesiredResult out;
  if (n == 0) return out;
  const auto p = seq.positions();
  const std::size_t w = n + 1;
  const auto prev = detail::chain_predecessors(p);
  std::vector<std::int32_t> g(w * w, 0), chain_best(w * w, 0), chain_arg(w * w, -1), pred(w * w, -1);
  // Prefix max over rows < i, columns <= j, with argmax.
  std::vector<std::int32_t> pm(w, -1), pm_arg(w, -1), row_pm(w), row_arg(w);
  std::int32_t best = 0, best_cell = -1;

  auto finish = [&](std::int32_t cell) {
    std::vector<SelfMatch> w_rev;
    for (std::int32_t c = cell; c >= 0; c = pred[static_cast<std::size_t>(c)])
      w_rev.push_back({static_cast<std::size_t>(c) / w, static_cast<std::size_t>(c) % w, false});
    out.witness.assign(w_rev.rbegin(), w_rev.rend());
    count_undesired(p, out.witness);
  };

  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t cell = i * w + j;
      std::int32_t val = 0, from = -1;
      if (pm[j - 1] > val) {
        val = pm[j - 1];
        from = pm_arg[j - 1];
      }
      if (i != j && prev[cell] >= 0) {
        const auto pc = static_cast<std::size_t>(prev[cell]);
        if (chain_best[pc] + 1 > val) {
          val = chain_best[pc] + 1;
          from = chain_arg[pc];
        }
      }
      g[cell] = val;
      pred[cell] = from;
      chain_best[cell] = val;
      chain_arg[cell] = static_cast<std::int32_t>(cell);
      if (prev[cell] >= 0 && chain_best[static_cast<std::size_t>(prev[cell])] > val) {
        chain_best[cell] = chain_best[static_cast<std::size_t>(prev[cell])];
        chain_arg[cell] = chain_arg[static_cast<std::size_t>(prev[cell])];
      }
      if (val > best || best_cell < 0) {
        best = val;
        best_cell = static_cast<std::int32_t>(cell);
      }
      if (stop_above && static_cast<std::size_t>(val) > *stop_above) {
        out.count = static_cast<std::size_t>(val);
        out.stopped_early = true;
        finish(static_cast<std::int32_t>(cell));
        return out;
      }
    }
    std::int32_t run = -1, run_arg = -1;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j >= 1 && g[i * w + j] > run) {
        run = g[i * w + j];
        run_arg = static_cast<std::int32_t>(i * w + j);
      }
      row_pm[j] = run;
      row_arg[j] = run_arg;
    }
    for (std::size_t j = 0; j <= n; ++j) {
      if (row_pm[j] > pm[j]) {
        pm[j] = row_pm[j];
        pm_arg[j] = row_arg[j];
      }
    }
  }
  out.count = static_cast<std::size_t>(best);
  finish(best_cell);
  return out;
}

struct LocalCheckParams {
  double log_ratio = 0;       // ln n / ln(n / lambda)
  std::size_t threshold = 0;  // pass iff every window count is below this
  std::size_t max_size = 0;   // matchings of at most this many matches
  std::size_t window = 0;     // |u| + |v| bound, in runs
};

inline LocalCheckParams local_check_params(std::size_t n, std::size_t lambda, double c) {
  LocalCheckParams lp;
  if (n < 2 || lambda >= n) return lp;
  lp.log_ratio = std::log(static_cast<double>(n)) / std::log(static_cast<double>(n) / static_cast<double>(lambda));
  const auto t_c = static_cast<std::size_t>(std::ceil(c * lp.log_ratio - 1e-9));
  lp.threshold = std::min(t_c, lambda + 1);
  lp.max_size = 2 * t_c;
  lp.window = static_cast<std::size_t>(std::floor(c * (2.0 * n / static_cast<double>(lambda)) * lp.log_ratio + 1e-9));
  return lp;
}

struct LocalCheckResult {
  bool pass = true;
  std::size_t lambda0 = 0;  // largest window count seen (capped at the first failure)
  LocalCheckParams params;
  std::size_t su = 0, sv = 0;     // witness window starts (1-based)
  std::vector<SelfMatch> witness;  // bad-only matching inside the window
};

/// Window check: for every pair of substrings u = runs[su..], v = runs[sv..]
/// with |u| + |v| bounded, the largest undesired count over matchings of only
/// bad matches (i != j) with at most `max_size` matches, where the first
/// match compares p_i - p_{su-1} with p_j - p_{sv-1}. Fails on the first
/// window reaching the threshold.
inline LocalCheckResult local_check(const SeparatorSequence& seq, std::size_t lambda, double c = 4.0) {
  LocalCheckResult out;
  const std::size_t n = seq.n();
  out.params = local_check_params(n, lambda, c);
  if (n < 2 || lambda >= n) return out;
  const auto& lp = out.params;
  const auto p = seq.positions();
  const std::size_t w = n + 1, cells = w * w, K = lp.max_size;
  const auto prev = detail::chain_predecessors(p);
  constexpr std::int32_t kNone = std::numeric_limits<std::int32_t>::min() / 2;

  // Level k (1..K) arrays: g = best count with exactly k matches ending at the
  // cell, h = running max along the cell's chain, pm = prefix max.
  std::vector<std::int32_t> g((K + 1) * cells), h((K + 1) * cells), h_arg((K + 1) * cells),
      pm((K + 1) * cells), pm_arg((K + 1) * cells), pred((K + 1) * cells);

  for (std::size_t su = 1; su <= n; ++su) {
    for (std::size_t sv = 1; sv <= n; ++sv) {
      if (lp.window < 2) continue;
      const std::size_t span = lp.window - 2;  // (i - su) + (j - sv) <= span
      auto inside = [&](std::size_t i, std::size_t j) {
        return i >= su && j >= sv && i <= n && j <= n && (i - su) + (j - sv) <= span;
      };
      for (std::size_t i = su; i <= n && i - su <= span; ++i) {
        for (std::size_t j = sv; j <= n && (i - su) + (j - sv) <= span; ++j) {
          const std::size_t cell = i * w + j;
          const bool bad = i != j;
          for (std::size_t k = 1; k <= K; ++k) {
            const std::size_t at = k * cells + cell;
            std::int32_t val = kNone, from = -1;
            if (bad) {
              if (k == 1) {
                val = (p[i] - p[su - 1] == p[j] - p[sv - 1]) ? 1 : 0;
              } else {
                if (inside(i - 1, j - 1)) {
                  const std::size_t q = (k - 1) * cells + (i - 1) * w + (j - 1);
                  if (pm[q] > val) {
                    val = pm[q];
                    from = pm_arg[q];
                  }
                }
                const std::int32_t pc = prev[cell];
                if (pc >= 0 && inside(static_cast<std::size_t>(pc) / w, static_cast<std::size_t>(pc) % w)) {
                  const std::size_t q = (k - 1) * cells + static_cast<std::size_t>(pc);
                  if (h[q] > kNone && h[q] + 1 > val) {
                    val = h[q] + 1;
                    from = h_arg[q];
                  }
                }
              }
            }
            g[at] = val;
            pred[at] = from;
            h[at] = val;
            h_arg[at] = static_cast<std::int32_t>(at);
            const std::int32_t pc = prev[cell];
            if (pc >= 0 && inside(static_cast<std::size_t>(pc) / w, static_cast<std::size_t>(pc) % w)) {
              const std::size_t q = k * cells + static_cast<std::size_t>(pc);
              if (h[q] > h[at]) {
                h[at] = h[q];
                h_arg[at] = h_arg[q];
              }
            }
            std::int32_t m = val, marg = static_cast<std::int32_t>(at);
            if (inside(i - 1, j) && pm[k * cells + (i - 1) * w + j] > m) {
              m = pm[k * cells + (i - 1) * w + j];
              marg = pm_arg[k * cells + (i - 1) * w + j];
            }
            if (inside(i, j - 1) && pm[k * cells + i * w + j - 1] > m) {
              m = pm[k * cells + i * w + j - 1];
              marg = pm_arg[k * cells + i * w + j - 1];
            }
            pm[at] = m;
            pm_arg[at] = marg;

            if (val > kNone && static_cast<std::size_t>(val) > out.lambda0) out.lambda0 = static_cast<std::size_t>(val);
            if (val > kNone && static_cast<std::size_t>(val) >= lp.threshold) {
              out.pass = false;
              out.su = su;
              out.sv = sv;
              std::vector<SelfMatch> rev;
              for (std::int32_t c2 = static_cast<std::int32_t>(at); c2 >= 0; c2 = pred[static_cast<std::size_t>(c2)]) {
                const std::size_t local = static_cast<std::size_t>(c2) % cells;
                rev.push_back({local / w, local % w, false});
              }
              out.witness.assign(rev.rbegin(), rev.rend());
              count_undesired(p, out.witness, {su - 1, sv - 1});
              return out;
            }
          }
        }
      }
    }
  }
  return out;
}

struct ExplicitConfig {
  double exponent = 3.0;     // a = smallest power of two >= (n / lambda)^exponent
  double c = 4.0;            // local check constant
  double epsilon_g = 0.0;    // generator slack; 0 means 1/n
  std::size_t verify_budget = kVerifierBudget;
};

struct ExplicitSeparator {
  SeparatorSequence seq;
  std::uint64_t seed = 0;
  std::uint64_t seeds_tried = 0;
  PrgSpec prg;
  unsigned log_a = 0;
};

/// Smallest power of two >= (n / lambda)^exponent.
inline std::uint64_t explicit_run_bound(std::size_t n, std::size_t lambda, double exponent) {
  const double target = std::pow(static_cast<double>(n) / static_cast<double>(lambda), exponent);
  std::uint64_t a = 1;
  while (static_cast<double>(a) < target * (1.0 - 1e-12)) {
    if (a >= (std::uint64_t{1} << 31)) throw CapacityError("run bound a exceeds 2^31");
    a <<= 1;
  }
  return a;
}

/// Runs from generator output: block b of log_a bits (LSB first) with value v
/// gives run length v + 1.
inline SeparatorSequence runs_from_bits(const std::vector<std::uint8_t>& bits, std::size_t n, unsigned log_a) {
  SeparatorSequence s{std::uint64_t{1} << log_a, std::vector<std::uint32_t>(n, 1)};
  for (std::size_t b = 0; b < n; ++b) {
    std::uint32_t v = 0;
    for (unsigned t = 0; t < log_a; ++t) v |= static_cast<std::uint32_t>(bits[b * log_a + t]) << t;
    s.runs[b] = v + 1;
  }
  return s;
}

/// Deterministic seed search: the first generator seed whose sequence passes
/// the exact verifier (n within budget) and the local check.
inline ExplicitSeparator construct_explicit(std::size_t n, std::size_t lambda, const ExplicitConfig& cfg = {}) {
  if (n < 1) throw UsageError("separator length must be positive");
  if (lambda < 1) throw UsageError("lambda must be positive");
  ExplicitSeparator out;
  const std::uint64_t a = explicit_run_bound(n, lambda, cfg.exponent);
  out.log_a = static_cast<unsigned>(std::countr_zero(a));
  if (out.log_a == 0) {
    out.seq = SeparatorSequence{1, std::vector<std::uint32_t>(n, 1)};
    if (n <= cfg.verify_budget && max_undesired(out.seq, cfg.verify_budget).count > lambda) {
      throw ConstructionError("all-ones runs exceed lambda and a = 1 leaves no choice");
    }
    out.seeds_tried = 1;
    return out;
  }
  const double eps = cfg.epsilon_g > 0 ? cfg.epsilon_g : 1.0 / static_cast<double>(n);
  out.prg = PrgSpec::for_length(n * out.log_a, eps);
  const PoweringPrg prg(out.prg);
  const bool exact = n <= cfg.verify_budget;
  for (std::uint64_t seed = 0; seed < out.prg.seed_count(); ++seed) {
    auto seq = runs_from_bits(prg.generate(seed), n, out.log_a);
    if (exact && max_undesired(seq, cfg.verify_budget, lambda).count > lambda) continue;
    if (!local_check(seq, lambda, cfg.c).pass) continue;
    out.seq = std::move(seq);
    out.seed = seed;
    out.seeds_tried = seed + 1;
    return out;
  }
  throw ConstructionError("no generator seed yields a (" + std::to_string(lambda) + ", " + std::to_string(a) +
                          ") separator of length " + std::to_string(n));
}

}  // namespace insdel
