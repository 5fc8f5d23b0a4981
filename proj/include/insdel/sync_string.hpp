#pragma once

// eta-synchronization strings: for all i < j < k,
// ED(s[i, j), s[j, k)) > (1 - eta)(k - i). Built by rejection sampling and
// used to recover block indices after insertions and deletions.

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "insdel/editops.hpp"
#include "insdel/errors.hpp"
#include "insdel/rng.hpp"

namespace insdel {

struct SyncString {
  double eta = 0.01;
  std::uint64_t alphabet_size = 2;
  std::vector<std::uint32_t> symbols;

  std::size_t size() const { return symbols.size(); }
  unsigned bits_per_symbol() const { return static_cast<unsigned>(std::bit_width(alphabet_size - 1)); }

  friend bool operator==(const SyncString&, const SyncString&) = default;
};

/// ceil(16 / eta^2).
inline std::uint64_t sync_alphabet_size(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw UsageError("eta must be in (0, 1)");
  return static_cast<std::uint64_t>(std::ceil(16.0 / (eta * eta) - 1e-9));
}

struct EtaViolation {
  std::size_t i = 0, j = 0, k = 0;  // 0-based, intervals [i, j) and [j, k)
  std::size_t edit_distance = 0;
};

inline constexpr std::size_t kSyncVerifyBudget = 60;

/// Exact interval check; nullopt when the property holds.
inline std::optional<EtaViolation> verify_eta(const SyncString& s, std::size_t budget = kSyncVerifyBudget) {
  const std::size_t n = s.size();
  if (n > budget) throw CapacityError("verify_eta limited to length " + std::to_string(budget));
  const auto& x = s.symbols;
  // For each (i, j), extend v = s[j, k) one symbol at a time and keep the
  // LCS column against u = s[i, j).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t lu = j - i;
      std::vector<std::size_t> col(lu + 1, 0), next(lu + 1, 0);
      for (std::size_t k = j + 1; k <= n; ++k) {
        const std::uint32_t c = x[k - 1];
        next[0] = 0;
        for (std::size_t r = 1; r <= lu; ++r)
          next[r] = x[i + r - 1] == c ? col[r - 1] + 1 : std::max(col[r], next[r - 1]);
        std::swap(col, next);
        const std::size_t ed = (k - i) - 2 * col[lu];
        if (!(static_cast<double>(ed) > (1.0 - s.eta) * static_cast<double>(k - i))) {
          return EtaViolation{i, j, k, ed};
        }
      }
    }
  }
  return std::nullopt;
}

/// Rejection sampling over alphabet ceil(16/eta^2); attempt a draws from the
/// a-th output of Rng(seed).
inline SyncString construct_sync_string(std::size_t n0, double eta, std::uint64_t seed,
                                        std::size_t max_attempts = 1000, std::size_t budget = kSyncVerifyBudget) {
  if (n0 > budget) throw CapacityError("sync string length beyond verification budget");
  SyncString s{eta, sync_alphabet_size(eta), std::vector<std::uint32_t>(n0)};
  Rng attempts(seed);
  for (std::size_t a = 0; a < max_attempts; ++a) {
    Rng rng(attempts.next());
    for (auto& c : s.symbols) c = static_cast<std::uint32_t>(rng.below(s.alphabet_size));
    if (!verify_eta(s, budget)) return s;
  }
  throw ConstructionError("no eta-synchronization string found within the attempt budget");
}

struct IndexRecovery {
  /// Per reading: the 0-based index it was aligned to, if any.
  std::vector<std::optional<std::size_t>> assignment;
  /// Per position of s: no reading aligned to it.
  std::vector<bool> erased;
};

/// Minimum-edit-distance alignment of readings to s. An unreadable reading
/// (nullopt) never matches.
inline IndexRecovery index_recovery(std::span<const std::optional<std::uint32_t>> readings, const SyncString& s) {
  std::vector<std::optional<std::uint32_t>> target(s.symbols.begin(), s.symbols.end());
  const auto l = lcs<std::optional<std::uint32_t>>(readings, target, [](const auto& a, const auto& b) {
    return a.has_value() && b.has_value() && *a == *b;
  });
  IndexRecovery out;
  out.assignment.assign(readings.size(), std::nullopt);
  out.erased.assign(s.size(), true);
  for (const auto& [r, idx] : l.pairs) {
    out.assignment[r] = idx;
    out.erased[idx] = false;
  }
  return out;
}

}  // namespace insdel
