#pragma once

// JSON forms of fields, codes, separators and sync strings, plus the raw
// bitstream format: an 8-byte little-endian bit count, then the bits packed
// most-significant-bit first and zero-padded to a whole byte.

#include <cstdint>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "insdel/affine.hpp"
#include "insdel/hamming.hpp"
#include "insdel/linear_insdel.hpp"
#include "insdel/separator.hpp"
#include "insdel/sync_string.hpp"

namespace insdel {

using nlohmann::json;

inline json to_json(const FieldSpec& s) {
  return {{"kind", s.kind == FieldKind::prime ? "prime" : "binary"}, {"q", s.q()}, {"modulus", s.modulus}};
}

inline FieldSpec field_spec_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  const auto modulus = j.at("modulus").get<std::uint64_t>();
  FieldSpec s;
  if (kind == "prime") s = FieldSpec::prime(modulus);
  else if (kind == "binary") s = FieldSpec::binary(modulus);
  else throw UsageError("unknown field kind '" + kind + "'");
  if (j.contains("q") && j.at("q").get<std::uint64_t>() != s.q()) throw UsageError("field q does not match modulus");
  return s;
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<Symbol>(row.begin(), row.end()));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.at(0).size() : 0;
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols) throw UsageError("ragged generator matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<Symbol>();
  }
  return m;
}

inline json to_json(const LinearCode& c) {
  json j = {{"field", to_json(c.field()->spec())},
            {"n", c.n()},
            {"m", c.m()},
            {"d", c.d()},
            {"generator", to_json(c.generator().entries)},
            {"strategy", to_string(c.strategy())}};
  if (!c.eval_points().empty()) j["eval_points"] = c.eval_points();
  if (const auto* parts = c.concat_parts()) {
    j["outer"] = to_json(parts->outer);
    j["inner"] = to_json(parts->inner);
  }
  return j;
}

inline LinearCode linear_code_from_json(const json& j) {
  const auto field = Field::make(field_spec_from_json(j.at("field")));
  const auto strategy = strategy_from_string(j.at("strategy").get<std::string>());
  const auto n = j.at("n").get<std::size_t>();
  const auto m = j.at("m").get<std::size_t>();
  LinearCode code = [&] {
    switch (strategy) {
      case DecoderStrategy::concatenated:
        return LinearCode::concatenated(linear_code_from_json(j.at("outer")), linear_code_from_json(j.at("inner")));
      case DecoderStrategy::brute_force_nearest:
        if (!j.contains("eval_points")) {
          return LinearCode::from_generator({field, matrix_from_json(j.at("generator"))}, j.at("d").get<std::size_t>());
        }
        [[fallthrough]];
      default:
        return LinearCode::reed_solomon(field, n, m, j.at("eval_points").get<std::vector<Symbol>>(), strategy);
    }
  }();
  if (code.n() != n || code.m() != m || code.d() != j.at("d").get<std::size_t>()) {
    throw UsageError("code dimensions in JSON are inconsistent");
  }
  if (j.contains("generator") && !(matrix_from_json(j.at("generator")) == code.generator().entries)) {
    throw UsageError("generator in JSON does not match the described code");
  }
  return code;
}

inline json to_json(const SeparatorSequence& s) { return {{"n", s.n()}, {"a", s.a}, {"runs", s.runs}}; }

inline SeparatorSequence separator_from_json(const json& j) {
  SeparatorSequence s{j.at("a").get<std::uint64_t>(), j.at("runs").get<std::vector<std::uint32_t>>()};
  if (j.contains("n") && j.at("n").get<std::size_t>() != s.n()) throw UsageError("separator n does not match runs");
  s.validate();
  return s;
}

inline json to_json(const SyncString& s) {
  return {{"eta", s.eta}, {"alphabet_size", s.alphabet_size}, {"symbols", s.symbols}};
}

inline SyncString sync_string_from_json(const json& j) {
  SyncString s{j.at("eta").get<double>(), j.at("alphabet_size").get<std::uint64_t>(),
               j.at("symbols").get<std::vector<std::uint32_t>>()};
  for (auto c : s.symbols)
    if (c >= s.alphabet_size) throw UsageError("sync symbol outside the alphabet");
  return s;
}

inline json to_json(const InsdelCode& c) {
  return {{"type", "linear-insdel"}, {"inner", to_json(c.inner())}, {"separator", to_json(c.separator())},
          {"kappa", c.kappa()}, {"n", c.n()}, {"m", c.m()}};
}

inline InsdelCode insdel_code_from_json(const json& j) {
  return {linear_code_from_json(j.at("inner")), separator_from_json(j.at("separator")), j.at("kappa").get<std::size_t>()};
}

inline json to_json(const AffineCode& c) {
  const auto& p = c.params();
  return {{"type", "affine"}, {"epsilon", p.epsilon}, {"eta", p.eta}, {"n0", p.n0}, {"l0", p.l0}, {"t", p.t},
          {"m0", p.m0}, {"d0", p.d0}, {"n", p.n}, {"m", p.m}, {"kappa", p.kappa}, {"rate", p.rate},
          {"sync", to_json(c.sync())}};
}

inline AffineCode affine_code_from_json(const json& j) {
  const auto params = affine_params(j.at("epsilon").get<double>(), j.at("n0").get<std::size_t>(),
                                    j.value("eta", 0.01));
  return {params, sync_string_from_json(j.at("sync"))};
}

inline void write_bitstream(std::ostream& out, const std::vector<std::uint8_t>& bits) {
  const std::uint64_t count = bits.size();
  for (int b = 0; b < 8; ++b) out.put(static_cast<char>((count >> (8 * b)) & 0xFF));
  for (std::size_t k = 0; k < bits.size(); k += 8) {
    std::uint8_t byte = 0;
    for (std::size_t t = 0; t < 8; ++t) byte = static_cast<std::uint8_t>((byte << 1) | (k + t < bits.size() ? bits[k + t] & 1 : 0));
    out.put(static_cast<char>(byte));
  }
}

inline std::vector<std::uint8_t> read_bitstream(std::istream& in) {
  std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (raw.size() < 8) throw UsageError("bitstream shorter than its length prefix");
  std::uint64_t count = 0;
  for (int b = 0; b < 8; ++b) count |= std::uint64_t{raw[static_cast<std::size_t>(b)]} << (8 * b);
  if ((raw.size() - 8) != (count + 7) / 8) throw UsageError("bitstream length prefix does not match its payload");
  std::vector<std::uint8_t> bits(count);
  for (std::size_t k = 0; k < count; ++k) bits[k] = (raw[8 + k / 8] >> (7 - k % 8)) & 1u;
  return bits;
}

}  // namespace insdel
