#pragma once

// Powering small-bias sample space: a seed (x, y) in GF(2^w)^2 yields bit
// i = <x^i, y>, the GF(2) inner product of the bit vectors. Its bias is at
// most n_g / 2^w, which bounds every k-bit marginal's distance from uniform.

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "insdel/errors.hpp"
#include "insdel/gf.hpp"

namespace insdel {

struct PrgSpec {
  std::size_t n_g = 0;
  double epsilon = 1.0;
  unsigned w = 1;

  unsigned d() const { return 2 * w; }
  std::uint64_t seed_count() const { return std::uint64_t{1} << d(); }

  /// Smallest w with 2^w >= n_g / epsilon.
  static PrgSpec for_length(std::size_t n_g, double epsilon) {
    if (n_g == 0) throw UsageError("generator length must be positive");
    if (!(epsilon > 0.0)) throw UsageError("epsilon must be positive");
    unsigned w = 1;
    while (std::ldexp(1.0, static_cast<int>(w)) < static_cast<double>(n_g) / epsilon) ++w;
    if (w > 32) throw CapacityError("seed would exceed 64 bits");
    return {n_g, epsilon, w};
  }
};

class PoweringPrg {
 public:
  explicit PoweringPrg(const PrgSpec& spec) : spec_(spec), field_(Field::binary(spec.w)) {
    if (spec.w < 1 || spec.w > 32) throw UsageError("w must be in [1, 32]");
  }

  const PrgSpec& spec() const { return spec_; }

  /// Bit i (0-based) for the seed whose low w bits are y and high w bits are x.
  bool bit(std::uint64_t seed, std::size_t i) const {
    const auto [x, y] = split(seed);
    return std::popcount(field_->pow(x, i) & y) & 1;
  }

  std::vector<std::uint8_t> generate(std::uint64_t seed) const {
    const auto [x, y] = split(seed);
    std::vector<std::uint8_t> out(spec_.n_g);
    Symbol power = 1;
    for (std::size_t i = 0; i < spec_.n_g; ++i) {
      out[i] = static_cast<std::uint8_t>(std::popcount(power & y) & 1);
      power = field_->mul(power, x);
    }
    return out;
  }

 private:
  std::pair<Symbol, Symbol> split(std::uint64_t seed) const {
    if (spec_.d() < 64 && seed >= spec_.seed_count()) throw UsageError("seed longer than d bits");
    const std::uint64_t mask = (std::uint64_t{1} << spec_.w) - 1;
    return {static_cast<Symbol>(seed >> spec_.w), static_cast<Symbol>(seed & mask)};
  }

  PrgSpec spec_;
  FieldPtr field_;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline constexpr std::uint64_t kMarginalBudget = std::uint64_t{1} << 32;

/// Max over index k-tuples and k-bit patterns of |Pr[pattern] - 2^-k| for the
/// uniform distribution over `samples`, each an n_g-bit word (bit i = index i).
inline double max_marginal_deviation(std::span<const std::uint64_t> samples, std::size_t n_g, std::size_t k,
                                     std::uint64_t budget = kMarginalBudget) {
  if (n_g > 64) throw UsageError("marginal check supports at most 64 output bits");
  if (k == 0 || k > n_g) throw UsageError("k must be in [1, n_g]");
  if (k > 16) throw CapacityError("k too large for exhaustive marginals");
  const double work = static_cast<double>(samples.size()) * static_cast<double>(binomial(n_g, k)) *
                      std::ldexp(1.0, static_cast<int>(k));
  if (work > static_cast<double>(budget)) throw CapacityError("marginal check exceeds its enumeration budget");
  if (samples.empty()) throw UsageError("empty sample space");

  const double target = std::ldexp(1.0, -static_cast<int>(k));
  const double total = static_cast<double>(samples.size());
  double worst = 0.0;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<std::uint64_t> counts(std::size_t{1} << k);
  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t s : samples) {
      std::size_t pattern = 0;
      for (std::size_t t = 0; t < k; ++t) pattern |= ((s >> idx[t]) & 1u) << t;
      ++counts[pattern];
    }
    for (std::uint64_t c : counts) worst = std::max(worst, std::abs(static_cast<double>(c) / total - target));
    // Next k-combination of [0, n_g) in lexicographic order.
    std::size_t t = k;
    while (t > 0 && idx[t - 1] == n_g - k + t - 1) --t;
    if (t == 0) break;
    ++idx[t - 1];
    for (std::size_t u = t; u < k; ++u) idx[u] = idx[u - 1] + 1;
  }
  return worst;
}

/// Full output table of the generator, one n_g-bit word per seed.
inline std::vector<std::uint64_t> sample_space(const PoweringPrg& prg) {
  if (prg.spec().n_g > 64) throw UsageError("sample space words hold at most 64 bits");
  if (prg.spec().d() > 24) throw CapacityError("sample space too large to enumerate");
  std::vector<std::uint64_t> out(prg.spec().seed_count());
  for (std::uint64_t seed = 0; seed < out.size(); ++seed) {
    const auto bits = prg.generate(seed);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) word |= std::uint64_t{bits[i]} << i;
    out[seed] = word;
  }
  return out;
}

/// Deviation of the powering generator's k-bit marginals.
inline double prg_verify_marginals(const PoweringPrg& prg, std::size_t k, std::uint64_t budget = kMarginalBudget) {
  const auto space = sample_space(prg);
  return max_marginal_deviation(space, prg.spec().n_g, k, budget);
}

}  // namespace insdel
