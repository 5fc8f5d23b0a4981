#pragma once

// LCS / insertion-deletion edit distance with traceback, and the seeded
// insertion/deletion channel used by every experiment.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "insdel/errors.hpp"
#include "insdel/rng.hpp"

namespace insdel {

struct LcsResult {
  std::size_t length = 0;
  /// Matched index pairs (i in x, j in y), strictly increasing in both.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Length-only LCS in O(|y|) memory. `eq(a, b)` decides whether two symbols match.
template <class T, class Eq = std::equal_to<>>
std::size_t lcs_length(std::span<const T> x, std::span<const T> y, Eq eq = {}) {
  std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = eq(x[i - 1], y[j - 1]) ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

template <class T, class Eq = std::equal_to<>>
LcsResult lcs(std::span<const T> x, std::span<const T> y, Eq eq = {}) {
  const std::size_t n = x.size(), m = y.size();
  std::vector<std::uint32_t> t((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return t[i * (m + 1) + j]; };
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      at(i, j) = eq(x[i - 1], y[j - 1]) ? at(i - 1, j - 1) + 1 : std::max(at(i - 1, j), at(i, j - 1));

  LcsResult out;
  out.length = at(n, m);
  std::size_t i = n, j = m;
  while (i > 0 && j > 0) {
    if (eq(x[i - 1], y[j - 1]) && at(i, j) == at(i - 1, j - 1) + 1) {
      out.pairs.emplace_back(i - 1, j - 1);
      --i;
      --j;
    } else if (at(i - 1, j) >= at(i, j - 1)) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(out.pairs.begin(), out.pairs.end());
  return out;
}

/// One insertion or deletion. `pos` indexes the string as it is when the op is
/// applied (ops are applied in order).
template <class T>
struct EditOp {
  enum class Kind { insert, remove };
  Kind kind;
  std::size_t pos;
  T symbol{};

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

template <class T>
using EditScript = std::vector<EditOp<T>>;

template <class T>
struct EditResult {
  std::size_t distance = 0;
  EditScript<T> script;
};

template <class T>
std::vector<T> apply_script(std::span<const T> x, const EditScript<T>& script) {
  std::vector<T> s(x.begin(), x.end());
  for (const auto& op : script) {
    if (op.kind == EditOp<T>::Kind::insert) {
      if (op.pos > s.size()) throw UsageError("insert position past end");
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(op.pos), op.symbol);
    } else {
      if (op.pos >= s.size()) throw UsageError("delete position past end");
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(op.pos));
    }
  }
  return s;
}

/// Insertion/deletion distance |x| + |y| - 2 LCS(x, y) with a script that
/// turns x into y.
template <class T>
EditResult<T> edit_distance(std::span<const T> x, std::span<const T> y) {
  const auto l = lcs(x, y);
  EditResult<T> out;
  out.distance = x.size() + y.size() - 2 * l.length;
  std::size_t xi = 0, yj = 0, cursor = 0;
  auto flush = [&](std::size_t x_end, std::size_t y_end) {
    for (; xi < x_end; ++xi) out.script.push_back({EditOp<T>::Kind::remove, cursor, x[xi]});
    for (; yj < y_end; ++yj) out.script.push_back({EditOp<T>::Kind::insert, cursor++, y[yj]});
  };
  for (const auto& [i, j] : l.pairs) {
    flush(i, j);
    ++xi;
    ++yj;
    ++cursor;
  }
  flush(x.size(), y.size());
  return out;
}

template <class T>
std::size_t edit_distance_value(std::span<const T> x, std::span<const T> y) {
  return x.size() + y.size() - 2 * lcs_length(x, y);
}

/// Seeded channel: n_del uniformly random deletions, then n_ins insertions at
/// uniform positions of the shortened string with symbols uniform on [0, q).
template <class T>
std::vector<T> insdel_channel(std::span<const T> z, std::size_t n_ins, std::size_t n_del, std::uint64_t q,
                              std::uint64_t seed) {
  if (n_del > z.size()) throw UsageError("more deletions than symbols");
  if (q == 0) throw UsageError("alphabet size must be positive");
  Rng rng(seed);
  // Same draws as erasing/inserting one at a time, but assembled in one pass
  // so long words are not shifted once per edit.
  std::vector<std::size_t> deleted;  // original indices, sorted
  for (std::size_t k = 0; k < n_del; ++k) {
    std::size_t idx = rng.below(z.size() - k);
    auto it = deleted.begin();
    for (; it != deleted.end() && *it <= idx; ++it) ++idx;
    deleted.insert(it, idx);
  }
  const std::size_t kept = z.size() - n_del;
  std::vector<std::pair<std::size_t, T>> inserted;  // final position, symbol
  for (std::size_t k = 0; k < n_ins; ++k) {
    const std::size_t pos = rng.below(kept + k + 1);
    for (auto& ins : inserted)
      if (ins.first >= pos) ++ins.first;
    inserted.emplace_back(pos, static_cast<T>(rng.below(q)));
  }
  std::sort(inserted.begin(), inserted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<T> out;
  out.reserve(kept + n_ins);
  std::size_t src = 0, del = 0, ins = 0;
  while (out.size() < kept + n_ins) {
    if (ins < inserted.size() && inserted[ins].first == out.size()) {
      out.push_back(inserted[ins++].second);
      continue;
    }
    while (del < deleted.size() && deleted[del] == src) {
      ++del;
      ++src;
    }
    out.push_back(z[src++]);
  }
  return out;
}

template <class T>
std::size_t min_pairwise_edit_distance(const std::vector<std::vector<T>>& words) {
  if (words.size() < 2) throw UsageError("need at least two words");
  std::size_t best = SIZE_MAX;
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a + 1; b < words.size(); ++b)
      best = std::min(best, edit_distance_value<T>(words[a], words[b]));
  return best;
}

}  // namespace insdel
