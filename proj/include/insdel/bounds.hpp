#pragma once

// Asymptotic rate bounds for linear insdel codes (o(1) terms dropped).

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "insdel/errors.hpp"

namespace insdel {

/// Binary entropy, H(0) = H(1) = 0.
inline double entropy(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw UsageError("entropy needs delta in [0, 1]");
  if (delta == 0.0 || delta == 1.0) return 0.0;
  return -delta * std::log2(delta) - (1.0 - delta) * std::log2(1.0 - delta);
}

inline void check_query(double delta, std::uint64_t q) {
  if (!(delta >= 0.0 && delta < 1.0)) throw UsageError("delta must be in [0, 1)");
  if (q < 2) throw UsageError("alphabet size must be at least 2");
}

/// Achievable by random linear codes: (1 - delta)/2 - H(delta)/log2 q. May be negative.
inline double existence_rate(double delta, std::uint64_t q) {
  check_query(delta, q);
  return (1.0 - delta) / 2.0 - entropy(delta) / std::log2(static_cast<double>(q));
}

/// Upper bound (1 - delta)/2. delta = 1 is accepted and gives 0.
inline double half_singleton(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw UsageError("delta must be in [0, 1]");
  return (1.0 - delta) / 2.0;
}

/// Upper bound (1/2)(1 - q delta / (q - 1)), clamped at 0.
inline double half_plotkin(double delta, std::uint64_t q) {
  check_query(delta, q);
  const double qd = static_cast<double>(q);
  return std::max(0.0, 0.5 * (1.0 - qd * delta / (qd - 1.0)));
}

}  // namespace insdel
