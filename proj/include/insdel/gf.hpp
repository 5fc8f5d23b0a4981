#pragma once

// Finite fields GF(p) and GF(2^l).
//
// Elements are carried around as plain `Symbol` values interpreted by a
// `Field`; `FieldElement` pairs a value with its field for call sites that
// want operand checking.

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "insdel/errors.hpp"

namespace insdel {

using Symbol = std::uint32_t;

enum class FieldKind { prime, binary_extension };

/// Description of a field: a prime modulus, or a GF(2) polynomial as a bitmask
/// (bit i is the coefficient of x^i).
struct FieldSpec {
  FieldKind kind = FieldKind::prime;
  std::uint64_t modulus = 2;

  static FieldSpec prime(std::uint64_t p) { return {FieldKind::prime, p}; }
  static FieldSpec binary(std::uint64_t poly) { return {FieldKind::binary_extension, poly}; }

  unsigned degree() const {
    return kind == FieldKind::prime ? 1u : static_cast<unsigned>(std::bit_width(modulus) - 1);
  }
  std::uint64_t q() const { return kind == FieldKind::prime ? modulus : (std::uint64_t{1} << degree()); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace gf2poly {

inline unsigned degree(std::uint64_t a) { return a == 0 ? 0u : static_cast<unsigned>(std::bit_width(a) - 1); }

inline std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
  const unsigned dm = degree(m);
  while (a != 0 && degree(a) >= dm) a ^= m << (degree(a) - dm);
  return a;
}

/// Human-readable form, e.g. "x^3+x+1".
inline std::string to_string(std::uint64_t a) {
  if (a == 0) return "0";
  std::string out;
  for (int i = 63; i >= 0; --i) {
    if (((a >> i) & 1u) == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) out += "1";
    else if (i == 1) out += "x";
    else out += "x^" + std::to_string(i);
  }
  return out;
}

}  // namespace gf2poly

/// Bundled irreducible polynomial for GF(2^degree), degree 1..32. Degrees 1..16
/// are the Conway polynomials; larger degrees are low-weight primitive polynomials.
inline std::uint64_t default_binary_modulus(unsigned degree) {
  static constexpr std::array<std::uint64_t, 33> table = {
      0,           0x3,        0x7,        0xB,        0x13,       0x25,       0x5B,
      0x83,        0x11D,      0x211,      0x46F,      0x805,      0x10EB,     0x201B,
      0x40A9,      0x8003,     0x1002D,    0x20009,    0x40081,    0x80027,    0x100009,
      0x200005,    0x400003,   0x800021,   0x1000087,  0x2000009,  0x4000047,  0x8000027,
      0x10000009,  0x20000005, 0x40800007, 0x80000009, 0x100400007};
  if (degree < 1 || degree > 32) throw UsageError("binary extension degree must be in [1, 32]");
  return table[degree];
}

/// Accepts iff `spec` describes a field. Throws InvalidSpecError whose witness is
/// a nontrivial factor (an integer for prime kind, a polynomial bitmask otherwise).
inline void validate_spec(const FieldSpec& spec) {
  if (spec.kind == FieldKind::prime) {
    const std::uint64_t p = spec.modulus;
    if (p < 2) throw InvalidSpecError("field modulus " + std::to_string(p) + " is below 2", p);
    if (p >= (std::uint64_t{1} << 31)) throw InvalidSpecError("prime modulus must be below 2^31", p);
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        throw InvalidSpecError(std::to_string(p) + " is composite: " + std::to_string(d) + " * " +
                                   std::to_string(p / d),
                               d);
      }
    }
    return;
  }
  const unsigned deg = spec.degree();
  if (spec.modulus < 2) throw InvalidSpecError("extension modulus must have degree >= 1", spec.modulus);
  if (deg > 32) throw InvalidSpecError("extension degree above 32 is not supported", spec.modulus);
  // Any reducible polynomial has a factor of degree <= deg/2.
  for (unsigned fd = 1; fd <= deg / 2; ++fd) {
    for (std::uint64_t f = std::uint64_t{1} << fd; f < (std::uint64_t{2} << fd); ++f) {
      if (gf2poly::mod(spec.modulus, f) == 0) {
        throw InvalidSpecError(gf2poly::to_string(spec.modulus) + " is reducible: divisible by " +
                                   gf2poly::to_string(f),
                               f);
      }
    }
  }
}

/// Immutable field instance. Binary extensions up to degree 16 use log/antilog
/// tables; larger degrees multiply by shift-and-reduce.
class Field {
 public:
  explicit Field(FieldSpec spec) : spec_(spec) {
    validate_spec(spec_);
    q_ = spec_.q();
    if (spec_.kind == FieldKind::binary_extension && spec_.degree() <= 16) build_tables();
  }

  static std::shared_ptr<const Field> make(FieldSpec spec) { return std::make_shared<const Field>(spec); }
  static std::shared_ptr<const Field> prime(std::uint64_t p) { return make(FieldSpec::prime(p)); }
  static std::shared_ptr<const Field> binary(unsigned degree) {
    return make(FieldSpec::binary(default_binary_modulus(degree)));
  }

  const FieldSpec& spec() const { return spec_; }
  std::uint64_t size() const { return q_; }
  bool is_binary() const { return spec_.kind == FieldKind::binary_extension; }
  /// Characteristic-2 field (GF(2) as a prime field included).
  bool char_two() const { return is_binary() || spec_.modulus == 2; }
  bool contains(std::uint64_t v) const { return v < q_; }

  Symbol add(Symbol a, Symbol b) const {
    if (char_two()) return a ^ b;
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Symbol>(s >= q_ ? s - q_ : s);
  }
  Symbol neg(Symbol a) const {
    if (char_two() || a == 0) return a;
    return static_cast<Symbol>(q_ - a);
  }
  Symbol sub(Symbol a, Symbol b) const { return add(a, neg(b)); }

  Symbol mul(Symbol a, Symbol b) const {
    if (a == 0 || b == 0) return 0;
    if (!is_binary()) return static_cast<Symbol>((std::uint64_t{a} * b) % q_);
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    std::uint64_t x = a, acc = 0;
    const unsigned deg = spec_.degree();
    const std::uint64_t top = std::uint64_t{1} << deg;
    for (std::uint64_t y = b; y != 0; y >>= 1) {
      if (y & 1u) acc ^= x;
      x <<= 1;
      if (x & top) x ^= spec_.modulus;
    }
    return static_cast<Symbol>(acc);
  }

  Symbol pow(Symbol a, std::uint64_t e) const {
    Symbol result = 1;
    while (e != 0) {
      if (e & 1u) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }

  Symbol inv(Symbol a) const {
    if (a == 0) throw DomainError("inverse of zero");
    if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
  }

  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }

  friend bool operator==(const Field& x, const Field& y) { return x.spec_ == y.spec_; }

 private:
  void build_tables() {
    const std::uint64_t order = q_ - 1;
    std::vector<std::uint32_t> exp(2 * order + 1), log(q_, 0);
    // Find a primitive element by brute force; the modulus need not be primitive.
    for (std::uint64_t g = (q_ == 2 ? 1 : 2); g < q_; ++g) {
      std::uint64_t x = 1;
      std::uint64_t k = 0;
      bool primitive = true;
      for (; k < order; ++k) {
        exp[k] = static_cast<std::uint32_t>(x);
        if (k > 0 && x == 1) {
          primitive = false;
          break;
        }
        x = slow_mul(x, g);
      }
      if (primitive) break;
    }
    for (std::uint64_t k = 0; k < order; ++k) {
      log[exp[k]] = static_cast<std::uint32_t>(k);
      exp[k + order] = exp[k];
    }
    exp_ = std::move(exp);
    log_ = std::move(log);
  }

  std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t acc = 0;
    const std::uint64_t top = std::uint64_t{1} << spec_.degree();
    for (; b != 0; b >>= 1) {
      if (b & 1u) acc ^= a;
      a <<= 1;
      if (a & top) a ^= spec_.modulus;
    }
    return acc;
  }

  FieldSpec spec_;
  std::uint64_t q_ = 2;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// A value bound to its field. Arithmetic between elements of different
/// fields throws UsageError.
class FieldElement {
 public:
  FieldElement(FieldPtr field, std::uint64_t value) : field_(std::move(field)) {
    if (!field_->contains(value)) throw UsageError("value " + std::to_string(value) + " outside the field");
    value_ = static_cast<Symbol>(value);
  }

  Symbol value() const { return value_; }
  const FieldPtr& field() const { return field_; }
  bool is_zero() const { return value_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    return {a.same(b), a.field_->add(a.value_, b.value_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return {a.same(b), a.field_->sub(a.value_, b.value_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    return {a.same(b), a.field_->mul(a.value_, b.value_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return {a.same(b), a.field_->div(a.value_, b.value_)};
  }
  FieldElement operator-() const { return {field_, field_->neg(value_)}; }
  FieldElement inverse() const { return {field_, field_->inv(value_)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value_ == b.value_ && *a.field_ == *b.field_;
  }

 private:
  const FieldPtr& same(const FieldElement& other) const {
    if (field_ != other.field_ && !(*field_ == *other.field_)) {
      throw UsageError("arithmetic between elements of different fields");
    }
    return field_;
  }

  FieldPtr field_;
  Symbol value_ = 0;
};

}  // namespace insdel
