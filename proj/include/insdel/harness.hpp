#pragma once

// Monte Carlo experiments. Trial i always runs from seed base + i; results are
// per-trial rows plus aggregates that recompute from the rows.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "insdel/bounds.hpp"
#include "insdel/editops.hpp"
#include "insdel/hamming.hpp"
#include "insdel/linear_insdel.hpp"

namespace insdel {

struct ExperimentConfig {
  std::string kind = "random-code-distance";
  FieldSpec field = FieldSpec::prime(2);
  std::size_t n = 10;
  std::size_t m = 3;
  double delta = 0.5;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  // Linear insdel instance for the sweep and the systematic wrapper.
  std::size_t n_c = 60;
  std::size_t kappa_c = 10;
  double fraction = 0.3;
  std::size_t k_max = 0;  // sweep upper end; 0 means 3 kappa + 3

  nlohmann::json to_json() const {
    return {{"kind", kind},
            {"field", {{"kind", field.kind == FieldKind::prime ? "prime" : "binary"},
                       {"q", field.q()},
                       {"modulus", field.modulus}}},
            {"n", n},
            {"m", m},
            {"delta", delta},
            {"trials", trials},
            {"seed", seed},
            {"n_c", n_c},
            {"kappa_c", kappa_c},
            {"fraction", fraction},
            {"k_max", k_max}};
  }
};

struct ExperimentResult {
  nlohmann::json config;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> aggregates;
  bool ok = true;

  double aggregate(const std::string& name) const {
    for (const auto& [k, v] : aggregates)
      if (k == name) return v;
    throw UsageError("no aggregate named " + name);
  }
};

inline std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(const ExperimentResult& r, std::ostream& out) {
  out << "# config: " << r.config.dump() << '\n';
  for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << r.columns[c];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
  for (const auto& [k, v] : r.aggregates) out << "# " << k << "=" << format_number(v) << '\n';
  out << "# ok=" << (r.ok ? 1 : 0) << '\n';
}

/// Every codeword of the code generated by g, in message odometer order.
inline std::vector<std::vector<Symbol>> all_codewords(const GeneratorMatrix& g) {
  if (message_space_size(g.field->size(), g.m()) > kExhaustiveCheckLimit) {
    throw CapacityError("codeword enumeration limited to q^m <= 4096");
  }
  std::vector<std::vector<Symbol>> out;
  for_each_message(g.field->size(), g.m(),
                   [&](const std::vector<Symbol>& x) { out.push_back(vec_mul(*g.field, x, g.entries)); });
  return out;
}

/// min(1, q^{2m} 2^{2 H(delta) n} q^{(delta - 1) n}), evaluated in log space.
inline double random_code_failure_bound(std::uint64_t q, std::size_t m, std::size_t n, double delta) {
  const double lq = std::log2(static_cast<double>(q));
  const double e = 2.0 * m * lq + 2.0 * entropy(delta) * n + (delta - 1.0) * n * lq;
  return e >= 0 ? 1.0 : std::exp2(e);
}

inline ExperimentResult random_code_distance_experiment(const ExperimentConfig& cfg) {
  const auto field = Field::make(cfg.field);
  const std::uint64_t q = field->size();
  if (message_space_size(q, cfg.m) > kExhaustiveCheckLimit) throw CapacityError("q^m must be <= 4096");
  if (cfg.trials < 1) throw UsageError("trial count must be positive");
  ExperimentResult r;
  r.config = cfg.to_json();
  r.columns = {"trial", "max_lcs", "failed"};
  const double threshold = (1.0 - cfg.delta) * static_cast<double>(cfg.n);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    const auto words = all_codewords(random_generator(field, cfg.m, cfg.n, cfg.seed + i));
    std::size_t best = 0;
    for (std::size_t a = 0; a < words.size(); ++a)
      for (std::size_t b = a + 1; b < words.size(); ++b)
        best = std::max(best, lcs_length<Symbol>(words[a], words[b]));
    const bool failed = static_cast<double>(best) >= threshold - 1e-9;
    failures += failed ? 1 : 0;
    r.rows.push_back({static_cast<double>(i), static_cast<double>(best), failed ? 1.0 : 0.0});
  }
  const double frac = static_cast<double>(failures) / static_cast<double>(cfg.trials);
  const double bound = random_code_failure_bound(q, cfg.m, cfg.n, cfg.delta);
  const double sigma = std::sqrt(bound * (1.0 - bound) / static_cast<double>(cfg.trials));
  r.aggregates = {{"failure_fraction", frac}, {"analytic_bound", bound}, {"sigma", sigma}};
  r.ok = frac <= bound + 3.0 * sigma;
  return r;
}

/// prod_{i=1..m} (1 - q^{-i}): probability that a uniform m x m matrix is invertible.
inline double full_rank_probability(std::uint64_t q, std::size_t m) {
  double p = 1.0;
  for (std::size_t i = 1; i <= m; ++i) p *= 1.0 - std::pow(static_cast<double>(q), -static_cast<double>(i));
  return p;
}

inline ExperimentResult systematic_distance_experiment(const ExperimentConfig& cfg) {
  const auto field = Field::make(cfg.field);
  const std::uint64_t q = field->size();
  if (message_space_size(q, cfg.m) > kExhaustiveCheckLimit) throw CapacityError("q^m must be <= 4096");
  if (cfg.trials < 1) throw UsageError("trial count must be positive");
  if (cfg.m > cfg.n) throw UsageError("m must not exceed n");
  ExperimentResult r;
  r.config = cfg.to_json();
  r.columns = {"trial", "first_full_rank", "attempts", "min_ed_original", "min_ed_systematic", "same_set"};
  std::size_t full = 0;
  bool all_same = true;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    Rng rng(cfg.seed + i);
    std::optional<GeneratorMatrix> sys;
    GeneratorMatrix g;
    std::size_t attempts = 0;
    while (!sys) {
      if (++attempts > 10000) throw ConstructionError("no full-rank left block in 10000 draws");
      g = random_generator(field, cfg.m, cfg.n, rng.next());
      sys = systematic_transform(g);
    }
    full += attempts == 1 ? 1 : 0;
    auto before = all_codewords(g);
    auto after = all_codewords(*sys);
    const std::size_t ed_before = before.size() >= 2 ? min_pairwise_edit_distance(before) : 0;
    const std::size_t ed_after = after.size() >= 2 ? min_pairwise_edit_distance(after) : 0;
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    const bool same = before == after;
    all_same = all_same && same && ed_before == ed_after;
    r.rows.push_back({static_cast<double>(i), attempts == 1 ? 1.0 : 0.0, static_cast<double>(attempts),
                      static_cast<double>(ed_before), static_cast<double>(ed_after), same ? 1.0 : 0.0});
  }
  const double n = static_cast<double>(cfg.trials);
  const double rate = static_cast<double>(full) / n;
  const double product = full_rank_probability(q, cfg.m);
  const double sigma_floor = std::sqrt(0.25 * 0.75 / n);
  const double sigma_product = std::sqrt(product * (1.0 - product) / n);
  r.aggregates = {{"full_rank_rate", rate},       {"floor", 0.25},
                  {"sigma_floor", sigma_floor},   {"product_oracle", product},
                  {"sigma_product", sigma_product}, {"all_same_set", all_same ? 1.0 : 0.0}};
  r.ok = rate >= 0.25 - 3.0 * sigma_floor && std::abs(rate - product) <= 3.0 * sigma_product && all_same;
  return r;
}

/// Uniform message over the code's field.
inline std::vector<Symbol> random_message(Rng& rng, std::size_t m, std::uint64_t q) {
  std::vector<Symbol> x(m);
  for (auto& s : x) s = static_cast<Symbol>(rng.below(q));
  return x;
}

inline ExperimentResult decode_success_sweep(const ExperimentConfig& cfg, const InsdelCode& code) {
  if (cfg.trials < 1) throw UsageError("trial count must be positive");
  const std::size_t k_max = cfg.k_max ? cfg.k_max : 3 * code.kappa() + 3;
  const std::uint64_t q = code.inner().field()->size();
  ExperimentResult r;
  r.config = cfg.to_json();
  r.config["kappa"] = code.kappa();
  r.config["codeword_length"] = code.n();
  r.columns = {"trial", "k", "insertions", "deletions", "success", "unmatched_nonzeros"};
  std::vector<std::size_t> successes(k_max + 1, 0);
  std::size_t trial = 0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    for (std::size_t t = 0; t < cfg.trials; ++t, ++trial) {
      Rng rng(cfg.seed + trial);
      const auto x = random_message(rng, code.m(), q);
      const auto ins = static_cast<std::size_t>(rng.below(k + 1));
      const auto z = code.encode(x);
      const auto zp = insdel_channel<Symbol>(z, ins, k - ins, q, rng.next());
      const auto d = insdel_decode_detailed(code, zp);
      const bool ok = d.message && *d.message == x;
      successes[k] += ok ? 1 : 0;
      r.rows.push_back({static_cast<double>(trial), static_cast<double>(k), static_cast<double>(ins),
                        static_cast<double>(k - ins), ok ? 1.0 : 0.0, static_cast<double>(d.unmatched_nonzeros)});
    }
  }
  r.aggregates.emplace_back("kappa", static_cast<double>(code.kappa()));
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double frac = static_cast<double>(successes[k]) / static_cast<double>(cfg.trials);
    r.aggregates.emplace_back("success_fraction_k" + std::to_string(k), frac);
    if (k <= code.kappa() && successes[k] != cfg.trials) r.ok = false;
  }
  return r;
}

/// Insertion/deletion counts for one wrapper trial, split between the raw
/// message prefix and the codeword. Patterns cycle through all-prefix
/// deletions, all-prefix insertions, mixed prefix, and a random split.
struct WrapperPlacement {
  std::size_t prefix_ins = 0, prefix_del = 0, code_ins = 0, code_del = 0;
};

inline WrapperPlacement wrapper_placement(std::size_t trial, std::size_t k, std::size_t m, Rng& rng) {
  WrapperPlacement p;
  switch (trial % 4) {
    case 0: p.prefix_del = std::min(k, m); p.code_del = k - p.prefix_del; break;
    case 1: p.prefix_ins = k; break;
    case 2:
      p.prefix_ins = static_cast<std::size_t>(rng.below(k + 1));
      p.prefix_del = std::min(k - p.prefix_ins, m);
      p.code_del = k - p.prefix_ins - p.prefix_del;
      break;
    default: {
      const auto in_prefix = static_cast<std::size_t>(rng.below(k + 1));
      p.prefix_ins = static_cast<std::size_t>(rng.below(in_prefix + 1));
      p.prefix_del = std::min(in_prefix - p.prefix_ins, m);
      p.prefix_ins = in_prefix - p.prefix_del;
      p.code_ins = static_cast<std::size_t>(rng.below(k - in_prefix + 1));
      p.code_del = k - in_prefix - p.code_ins;
    }
  }
  return p;
}

inline ExperimentResult systematic_wrapper_experiment(const ExperimentConfig& cfg, const InsdelCode& code) {
  if (cfg.trials < 1) throw UsageError("trial count must be positive");
  const SystematicInsdel sys(code);
  const std::uint64_t q = code.inner().field()->size();
  const std::size_t k = code.kappa();
  ExperimentResult r;
  r.config = cfg.to_json();
  r.config["kappa"] = k;
  r.columns = {"trial", "prefix_insertions", "prefix_deletions", "code_insertions", "code_deletions", "success"};
  std::size_t successes = 0;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    Rng rng(cfg.seed + i);
    const auto x = random_message(rng, sys.m(), q);
    const auto pl = wrapper_placement(i, k, sys.m(), rng);
    const auto word = sys.encode(x);
    const std::span<const Symbol> all(word);
    auto prefix = insdel_channel<Symbol>(all.first(sys.m()), pl.prefix_ins, pl.prefix_del, q, rng.next());
    const auto rest = insdel_channel<Symbol>(all.subspan(sys.m()), pl.code_ins, pl.code_del, q, rng.next());
    prefix.insert(prefix.end(), rest.begin(), rest.end());
    const auto got = sys.decode(prefix);
    const bool ok = got && *got == x;
    successes += ok ? 1 : 0;
    r.rows.push_back({static_cast<double>(i), static_cast<double>(pl.prefix_ins), static_cast<double>(pl.prefix_del),
                      static_cast<double>(pl.code_ins), static_cast<double>(pl.code_del), ok ? 1.0 : 0.0});
  }
  const auto [num, den] = sys.rate();
  const double frac = static_cast<double>(successes) / static_cast<double>(cfg.trials);
  r.aggregates = {{"success_fraction", frac},
                  {"rate", static_cast<double>(num) / static_cast<double>(den)},
                  {"message_symbols", static_cast<double>(num)},
                  {"word_symbols", static_cast<double>(den)}};
  r.ok = successes == cfg.trials;
  return r;
}

}  // namespace insdel
