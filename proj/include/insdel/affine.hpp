#pragma once

// Binary affine insdel code. Each inner RS symbol y_i (over GF(2^l0)) is
// prefixed with sync symbol s_i, bit-stuffed (a 0 after every full group of t
// bits) and framed by the boundary 0 1^{t+1}:
//   z_i = 0 1^{t+1} stuff(s_i y_i),   z = z_1 ... z_n0.
// Stuffing keeps content free of t+1 ones, so boundaries are found by scanning
// for long runs of ones. All multi-bit values are written LSB first.

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "insdel/hamming.hpp"
#include "insdel/sync_string.hpp"

namespace insdel {

using Bits = std::vector<std::uint8_t>;

struct AffineParams {
  double epsilon = 0;
  double eta = 0.01;
  std::size_t n0 = 0;
  unsigned l0 = 0;     // inner symbol width
  std::size_t t = 0;   // stuffing period
  std::size_t e0 = 0;  // inner error radius, d0 = 2 e0 + 1
  std::size_t d0 = 0;
  std::size_t m0 = 0;
  std::uint64_t alphabet = 0;  // sync alphabet size
  unsigned ls = 0;             // sync symbol width
  unsigned l = 0;              // ls + l0
  std::size_t content_bits = 0;  // l + floor(l / t)
  std::size_t block_bits = 0;    // t + 2 + content_bits
  std::size_t n = 0;             // total bits
  std::size_t m = 0;             // message bits
  std::size_t kappa = 0;         // insdel budget
  double rate = 0;               // m / n
  double rate_formula = 0;       // (m0/n0) l0 / ((l0 + ls)(1 + 1/t) + t + 2)
};

/// Dimensions for (epsilon, n0): l0 = max(ceil(log2 n0), min(ceil(1/eps^2), 32)),
/// t = ceil(1/eps), e0 = floor(eps n0), m0 = n0 - 2 e0, kappa = e0.
inline AffineParams affine_params(double epsilon, std::size_t n0, double eta = 0.01) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw UsageError("epsilon must be in (0, 1/2)");
  if (n0 < 1) throw UsageError("n0 must be positive");
  AffineParams a;
  a.epsilon = epsilon;
  a.eta = eta;
  a.n0 = n0;
  const auto width = static_cast<unsigned>(std::bit_width(n0 - 1));
  const double l0_target = std::ceil(1.0 / (epsilon * epsilon) - 1e-9);
  a.l0 = std::max({width, 1u, static_cast<unsigned>(std::min(l0_target, 32.0))});
  if (a.l0 > 32) throw ParameterError("n0 needs an inner field wider than 32 bits");
  a.t = static_cast<std::size_t>(std::ceil(1.0 / epsilon - 1e-9));
  a.e0 = static_cast<std::size_t>(std::floor(epsilon * static_cast<double>(n0) + 1e-9));
  if (2 * a.e0 >= n0) throw ParameterError("m0 = n0 - 2 floor(eps n0) is below 1");
  a.d0 = 2 * a.e0 + 1;
  a.m0 = n0 - 2 * a.e0;
  a.alphabet = sync_alphabet_size(eta);
  a.ls = static_cast<unsigned>(std::bit_width(a.alphabet - 1));
  a.l = a.ls + a.l0;
  a.content_bits = a.l + a.l / a.t;
  a.block_bits = a.t + 2 + a.content_bits;
  a.n = n0 * a.block_bits;
  a.m = a.m0 * a.l0;
  a.kappa = a.e0;
  a.rate = static_cast<double>(a.m) / static_cast<double>(a.n);
  const double t = static_cast<double>(a.t);
  a.rate_formula = (static_cast<double>(a.m0) / static_cast<double>(n0)) * a.l0 /
                   ((a.l0 + a.ls) * (1.0 + 1.0 / t) + (t + 2.0));
  return a;
}

/// A 0 after every full group of t bits.
inline Bits stuff_bits(std::span<const std::uint8_t> in, std::size_t t) {
  Bits out;
  out.reserve(in.size() + in.size() / t);
  for (std::size_t k = 0; k < in.size(); ++k) {
    out.push_back(in[k]);
    if ((k + 1) % t == 0) out.push_back(0);
  }
  return out;
}

/// Inverse of stuff_bits; nullopt if a stuffed position holds a 1.
inline std::optional<Bits> unstuff_bits(std::span<const std::uint8_t> in, std::size_t t) {
  Bits out;
  for (std::size_t k = 0; k < in.size(); ++k) {
    if ((k + 1) % (t + 1) == 0) {
      if (in[k] != 0) return std::nullopt;
      continue;
    }
    out.push_back(in[k]);
  }
  return out;
}

/// Contents between boundaries. A boundary is the first t+1 ones of a maximal
/// run of at least t+1 ones plus the 0 before it; the run's remaining ones
/// belong to the following content. Bits before the first boundary are dropped.
inline std::vector<Bits> parse_blocks(std::span<const std::uint8_t> z, std::size_t t) {
  std::vector<Bits> blocks;
  std::optional<std::size_t> content_start;
  std::size_t k = 0;
  while (k < z.size()) {
    if (z[k] != 1) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < z.size() && z[end] == 1) ++end;
    if (end - k >= t + 1) {
      if (content_start) {
        const std::size_t stop = k > 0 ? k - 1 : 0;
        blocks.emplace_back(z.begin() + static_cast<std::ptrdiff_t>(*content_start),
                            z.begin() + static_cast<std::ptrdiff_t>(std::max(stop, *content_start)));
      }
      content_start = k + t + 1;
    }
    k = end;
  }
  if (content_start) blocks.emplace_back(z.begin() + static_cast<std::ptrdiff_t>(*content_start), z.end());
  return blocks;
}

inline void push_value(Bits& out, std::uint64_t v, unsigned width) {
  for (unsigned b = 0; b < width; ++b) out.push_back(static_cast<std::uint8_t>((v >> b) & 1u));
}

inline std::uint64_t read_value(std::span<const std::uint8_t> bits) {
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < bits.size(); ++b) v |= std::uint64_t{bits[b]} << b;
  return v;
}

struct AffineDecodeDetail {
  std::optional<Bits> message;
  std::size_t blocks = 0;
  std::size_t malformed = 0;
  std::size_t erasures = 0;
};

class AffineCode {
 public:
  AffineCode(AffineParams params, SyncString sync)
      : p_(params),
        inner_(LinearCode::reed_solomon(Field::binary(params.l0), params.n0, params.m0)),
        sync_(std::move(sync)) {
    if (sync_.size() != p_.n0) throw UsageError("sync string length must equal n0");
    if (sync_.bits_per_symbol() != p_.ls) throw UsageError("sync alphabet does not match the parameters");
    offset_ = encode(Bits(p_.m, 0));
  }

  /// Parameters from (epsilon, n0) and a sync string built from `seed`.
  static AffineCode build(double epsilon, std::size_t n0, std::uint64_t seed, double eta = 0.01) {
    const auto params = affine_params(epsilon, n0, eta);
    return {params, construct_sync_string(n0, eta, seed, 1000, std::max(n0, kSyncVerifyBudget))};
  }

  const AffineParams& params() const { return p_; }
  const LinearCode& inner() const { return inner_; }
  const SyncString& sync() const { return sync_; }
  const Bits& offset() const { return offset_; }

  Bits encode(std::span<const std::uint8_t> x) const {
    if (x.size() != p_.m) throw UsageError("message must have " + std::to_string(p_.m) + " bits");
    std::vector<Symbol> msg(p_.m0);
    for (std::size_t i = 0; i < p_.m0; ++i) {
      for (unsigned b = 0; b < p_.l0; ++b) {
        const auto bit = x[i * p_.l0 + b];
        if (bit > 1) throw UsageError("message bits must be 0 or 1");
        msg[i] |= static_cast<Symbol>(bit) << b;
      }
    }
    const auto y = inner_.encode(msg);
    Bits z;
    z.reserve(p_.n);
    for (std::size_t i = 0; i < p_.n0; ++i) {
      Bits content;
      push_value(content, sync_.symbols[i], p_.ls);
      push_value(content, y[i], p_.l0);
      z.push_back(0);
      z.insert(z.end(), p_.t + 1, 1);
      const auto stuffed = stuff_bits(content, p_.t);
      z.insert(z.end(), stuffed.begin(), stuffed.end());
    }
    return z;
  }

  AffineDecodeDetail decode_detailed(std::span<const std::uint8_t> received) const {
    AffineDecodeDetail out;
    const auto blocks = parse_blocks(received, p_.t);
    out.blocks = blocks.size();
    std::vector<std::optional<std::uint32_t>> readings(blocks.size());
    std::vector<Symbol> data(blocks.size(), 0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].size() != p_.content_bits) {
        ++out.malformed;
        continue;
      }
      const auto plain = unstuff_bits(blocks[b], p_.t);
      if (!plain) {
        ++out.malformed;
        continue;
      }
      const std::span<const std::uint8_t> bits(*plain);
      const auto sync_value = read_value(bits.first(p_.ls));
      if (sync_value >= sync_.alphabet_size) {
        ++out.malformed;
        continue;
      }
      readings[b] = static_cast<std::uint32_t>(sync_value);
      data[b] = static_cast<Symbol>(read_value(bits.subspan(p_.ls, p_.l0)));
    }
    // The alignment is one-to-one, so two readings never claim one index.
    const auto rec = index_recovery(readings, sync_);
    std::vector<Symbol> y(p_.n0, 0);
    std::unique_ptr<bool[]> erased(new bool[p_.n0]);
    for (std::size_t i = 0; i < p_.n0; ++i) erased[i] = rec.erased[i];
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (rec.assignment[b]) y[*rec.assignment[b]] = data[b];
    for (std::size_t i = 0; i < p_.n0; ++i) out.erasures += erased[i] ? 1 : 0;

    const auto msg = inner_.decode(y, std::span<const bool>(erased.get(), p_.n0));
    if (!msg) return out;
    Bits x;
    x.reserve(p_.m);
    for (Symbol s : *msg) push_value(x, s, p_.l0);
    out.message = std::move(x);
    return out;
  }

  std::optional<Bits> decode(std::span<const std::uint8_t> received) const {
    return decode_detailed(received).message;
  }

 private:
  AffineParams p_;
  LinearCode inner_;
  SyncString sync_;
  Bits offset_;
};

}  // namespace insdel
