// Command-line front end: build code instances as JSON specs, then encode,
// corrupt and decode files against them. Exit status 0 on success, 1 on a
// domain failure (decode or construction), 2 on a usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "insdel/affine.hpp"
#include "insdel/bounds.hpp"
#include "insdel/harness.hpp"
#include "insdel/linear_insdel.hpp"
#include "insdel/serialize.hpp"

using namespace insdel;
using nlohmann::json;

namespace {

/// Decode failures and failed verifications; exit status 1.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << data;
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Symbols of `width` bits, most significant first, to a raw bitstream.
std::string pack_raw(const std::vector<Symbol>& s, unsigned width) {
  Bits bits;
  for (Symbol v : s)
    for (unsigned b = width; b-- > 0;) bits.push_back(static_cast<std::uint8_t>((v >> b) & 1u));
  std::ostringstream out;
  write_bitstream(out, bits);
  return out.str();
}

std::vector<Symbol> unpack_raw(const std::string& data, unsigned width) {
  std::istringstream in(data);
  const auto bits = read_bitstream(in);
  if (bits.size() % width) throw UsageError("raw stream is not a whole number of symbols");
  std::vector<Symbol> s(bits.size() / width, 0);
  for (std::size_t k = 0; k < bits.size(); ++k) s[k / width] = (s[k / width] << 1) | bits[k];
  return s;
}

/// Symbol widths usable in raw files: 1 bit per symbol of GF(2^l) costs l bits.
unsigned raw_width(const Field& f) {
  if (!f.is_binary()) throw UsageError("raw format needs a binary field");
  return f.spec().degree();
}

std::vector<Symbol> read_symbols(const std::string& path, const std::string& format, const Field& f) {
  const auto data = read_file(path);
  if (format == "raw") return unpack_raw(data, raw_width(f));
  try {
    return json::parse(data).get<std::vector<Symbol>>();
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "' is not a JSON array of symbols: " + e.what());
  }
}

void write_symbols(const std::string& path, const std::string& format, const Field& f, const std::vector<Symbol>& s) {
  write_file(path, format == "raw" ? pack_raw(s, raw_width(f)) : json(s).dump() + "\n");
}

Bits read_bits(const std::string& path, const std::string& format) {
  const auto data = read_file(path);
  if (format == "raw") {
    std::istringstream in(data);
    return read_bitstream(in);
  }
  Bits b;
  try {
    b = json::parse(data).get<Bits>();
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "' is not a JSON array of bits: " + e.what());
  }
  for (auto v : b)
    if (v > 1) throw UsageError("bit values must be 0 or 1");
  return b;
}

void write_bits(const std::string& path, const std::string& format, const Bits& b) {
  if (format == "raw") {
    std::ostringstream out;
    write_bitstream(out, b);
    write_file(path, out.str());
  } else {
    write_file(path, json(b).dump() + "\n");
  }
}

struct FieldOpts {
  std::uint64_t prime = 0;
  unsigned degree = 0;
  std::uint64_t modulus = 0;

  void add(CLI::App* app, unsigned default_degree) {
    degree = default_degree;
    app->add_option("--prime", prime, "prime field GF(p)");
    auto* opt = app->add_option("--degree", degree, "binary field GF(2^l) with the bundled modulus");
    if (default_degree) opt->capture_default_str();
    app->add_option("--modulus", modulus, "binary field from an explicit modulus polynomial (bit mask)");
  }

  FieldSpec spec() const {
    if ((prime != 0) + (modulus != 0) > 1) throw UsageError("give at most one of --prime and --modulus");
    if (prime) return FieldSpec::prime(prime);
    if (modulus) return FieldSpec::binary(modulus);
    if (degree < 1 || degree > 32) throw UsageError("--degree must be in 1..32");
    return FieldSpec::binary(default_binary_modulus(degree));
  }

  /// As spec(), with `fallback` when no field flag was given.
  FieldSpec spec_or(const FieldSpec& fallback) const {
    return prime || modulus || degree ? spec() : fallback;
  }
};

const std::vector<std::string> kFormats{"json", "raw"};

// ---- code build ------------------------------------------------------------

struct BuildOpts {
  std::string kind = "linear-insdel";
  FieldOpts field;
  std::size_t n = 0, m = 0;
  std::string strategy = "errors-and-erasures-rs";
  std::uint64_t seed = 1;
  unsigned b = 4;
  std::size_t n_out = 15, m_out = 7, n_in = 8, tries = 32;
  std::size_t n_c = 60, kappa_c = 10;
  double fraction = 0.01;
  std::string separator = "explicit";
  std::uint64_t a = 0;
  double exponent = 3.0, c = 4.0;
  double epsilon = 0.1, eta = 0.01;
  std::size_t n0 = 40;
  std::string out = "-";
};

json build_code(const BuildOpts& o) {
  if (o.kind == "rs") {
    return to_json(LinearCode::reed_solomon(Field::make(o.field.spec()), o.n, o.m, {}, strategy_from_string(o.strategy)));
  }
  if (o.kind == "random") {
    return to_json(LinearCode::from_generator(random_generator(Field::make(o.field.spec()), o.m, o.n, o.seed)));
  }
  if (o.kind == "concatenated") {
    return to_json(LinearCode::binary_concatenated(o.b, o.n_out, o.m_out, o.n_in, o.seed, o.tries));
  }
  if (o.kind == "linear-insdel") {
    const auto field = Field::make(o.field.spec());
    if (o.separator == "explicit") {
      ExplicitConfig cfg;
      cfg.exponent = o.exponent;
      cfg.c = o.c;
      const auto inst = explicit_rs_insdel(field, o.n_c, o.kappa_c, o.fraction, cfg);
      auto j = to_json(inst.code);
      j["separator_seed"] = inst.separator.seed;
      j["seeds_tried"] = inst.separator.seeds_tried;
      return j;
    }
    if (o.separator == "random") {
      if (2 * o.kappa_c >= o.n_c) throw ParameterError("kappa_C too large for block length");
      if (o.a < 1) throw UsageError("--a is required for a random separator");
      return to_json(monte_carlo_insdel(LinearCode::reed_solomon(field, o.n_c, o.n_c - 2 * o.kappa_c), o.a, o.seed,
                                        o.fraction));
    }
    throw UsageError("--separator must be explicit or random");
  }
  if (o.kind == "affine") return to_json(AffineCode::build(o.epsilon, o.n0, o.seed, o.eta));
  throw UsageError("unknown code kind '" + o.kind + "'");
}

// ---- experiments -----------------------------------------------------------

struct ExperimentOpts {
  ExperimentConfig cfg;
  FieldOpts field;
  std::string code;
  std::string out = "-";
};

InsdelCode experiment_code(const ExperimentOpts& o) {
  if (!o.code.empty()) return insdel_code_from_json(read_json(o.code));
  return explicit_rs_insdel(Field::make(o.field.spec_or(FieldSpec::binary(default_binary_modulus(6)))), o.cfg.n_c, o.cfg.kappa_c, o.cfg.fraction).code;
}

ExperimentResult run_experiment(const ExperimentOpts& o) {
  auto cfg = o.cfg;
  const auto& k = cfg.kind;
  if (k == "random-code-distance" || k == "systematic-distance") {
    cfg.field = o.field.spec_or(FieldSpec::prime(2));
    return k == "random-code-distance" ? random_code_distance_experiment(cfg) : systematic_distance_experiment(cfg);
  }
  if (k == "decode-sweep") return decode_success_sweep(cfg, experiment_code(o));
  if (k == "systematic-wrapper") return systematic_wrapper_experiment(cfg, experiment_code(o));
  throw UsageError("unknown experiment kind '" + k + "'");
}

std::string csv_of(const ExperimentResult& r) {
  std::ostringstream out;
  write_csv(r, out);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear and affine insertion-deletion codes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all subcommand help");

  // field
  auto* field_cmd = app.add_subcommand("field", "validate a field and evaluate one operation");
  FieldOpts field_opts;
  field_opts.add(field_cmd, 8);
  std::string field_op;
  std::uint64_t op_a = 0, op_b = 0;
  field_cmd->add_option("--op", field_op, "add, sub, mul, div, inv or pow")
      ->check(CLI::IsMember({"add", "sub", "mul", "div", "inv", "pow"}));
  field_cmd->add_option("--a", op_a);
  field_cmd->add_option("--b", op_b);

  // code build
  auto* code_cmd = app.add_subcommand("code", "code instances");
  code_cmd->require_subcommand(1);
  auto* build_cmd = code_cmd->add_subcommand("build", "build a code and write its JSON spec");
  BuildOpts bo;
  build_cmd->add_option("--kind", bo.kind)
      ->check(CLI::IsMember({"rs", "random", "concatenated", "linear-insdel", "affine"}))
      ->capture_default_str();
  bo.field.add(build_cmd, 6);
  build_cmd->add_option("--n", bo.n, "block length (rs, random)");
  build_cmd->add_option("--m", bo.m, "dimension (rs, random)");
  build_cmd->add_option("--strategy", bo.strategy, "decoder for rs")->capture_default_str();
  build_cmd->add_option("--seed", bo.seed)->capture_default_str();
  build_cmd->add_option("--bits", bo.b, "outer symbol width (concatenated)");
  build_cmd->add_option("--n-out", bo.n_out);
  build_cmd->add_option("--m-out", bo.m_out);
  build_cmd->add_option("--n-in", bo.n_in);
  build_cmd->add_option("--tries", bo.tries);
  build_cmd->add_option("--n-c", bo.n_c, "inner RS length (linear-insdel)")->capture_default_str();
  build_cmd->add_option("--kappa-c", bo.kappa_c, "inner RS error radius")->capture_default_str();
  build_cmd->add_option("--fraction", bo.fraction, "insdel radius = floor(fraction * kappa_c)")->capture_default_str();
  build_cmd->add_option("--separator", bo.separator, "explicit or random")->capture_default_str();
  build_cmd->add_option("--a", bo.a, "run-length bound for a random separator");
  build_cmd->add_option("--exponent", bo.exponent, "explicit separator: a >= (n/lambda)^exponent")->capture_default_str();
  build_cmd->add_option("--c", bo.c, "explicit separator local-check constant")->capture_default_str();
  build_cmd->add_option("--epsilon", bo.epsilon, "affine")->capture_default_str();
  build_cmd->add_option("--eta", bo.eta, "affine sync parameter")->capture_default_str();
  build_cmd->add_option("--n0", bo.n0, "affine inner length")->capture_default_str();
  build_cmd->add_option("--out", bo.out, "output path, - for stdout")->capture_default_str();

  // insdel encode | decode | corrupt
  auto* insdel_cmd = app.add_subcommand("insdel", "linear insdel code files");
  insdel_cmd->require_subcommand(1);
  std::string code_path, in_path, out_path = "-", format = "json", bit_format = "raw";
  std::size_t n_ins = 0, n_del = 0;
  std::uint64_t seed = 1;
  auto io_opts = [&](CLI::App* c, bool need_code, std::string& fmt) {
    auto* opt = c->add_option("--code", code_path, "code spec JSON from `code build`");
    if (need_code) opt->required();
    c->add_option("--in", in_path, "input file, - for stdin")->required();
    c->add_option("--out", out_path, "output file, - for stdout")->capture_default_str();
    c->add_option("--format", fmt, "json or raw")->check(CLI::IsMember(kFormats))->capture_default_str();
  };
  auto corrupt_opts = [&](CLI::App* c) {
    c->add_option("--ins", n_ins, "insertions")->capture_default_str();
    c->add_option("--del", n_del, "deletions")->capture_default_str();
    c->add_option("--seed", seed)->capture_default_str();
  };
  auto* ins_enc = insdel_cmd->add_subcommand("encode", "message -> codeword");
  auto* ins_dec = insdel_cmd->add_subcommand("decode", "received word -> message");
  auto* ins_cor = insdel_cmd->add_subcommand("corrupt", "apply random insertions and deletions");
  for (auto* c : {ins_enc, ins_dec, ins_cor}) io_opts(c, true, format);
  corrupt_opts(ins_cor);

  // affine encode | decode | corrupt
  auto* affine_cmd = app.add_subcommand("affine", "binary affine code files (raw bitstreams by default)");
  affine_cmd->require_subcommand(1);
  double aff_eps = 0.1, aff_eta = 0.01;
  std::size_t aff_n0 = 40;
  auto* aff_enc = affine_cmd->add_subcommand("encode", "message bits -> codeword bits");
  auto* aff_dec = affine_cmd->add_subcommand("decode", "received bits -> message bits");
  auto* aff_cor = affine_cmd->add_subcommand("corrupt", "apply random bit insertions and deletions");
  for (auto* c : {aff_enc, aff_dec, aff_cor}) {
    io_opts(c, false, bit_format);
    c->add_option("--epsilon", aff_eps, "build in place when --code is absent")->capture_default_str();
    c->add_option("--n0", aff_n0)->capture_default_str();
    c->add_option("--eta", aff_eta)->capture_default_str();
  }
  for (auto* c : {aff_enc, aff_dec}) c->add_option("--seed", seed, "sync string seed")->capture_default_str();
  corrupt_opts(aff_cor);

  // separator build | verify
  auto* sep_cmd = app.add_subcommand("separator", "synchronization separator sequences");
  sep_cmd->require_subcommand(1);
  std::size_t sep_n = 0, sep_lambda = 0, budget = kVerifierBudget;
  ExplicitConfig sep_cfg;
  auto* sep_build = sep_cmd->add_subcommand("build", "explicit construction by seed search");
  sep_build->add_option("--n", sep_n)->required();
  sep_build->add_option("--lambda", sep_lambda)->required();
  sep_build->add_option("--exponent", sep_cfg.exponent)->capture_default_str();
  sep_build->add_option("--c", sep_cfg.c)->capture_default_str();
  sep_build->add_option("--out", out_path)->capture_default_str();
  auto* sep_verify = sep_cmd->add_subcommand("verify", "exact undesired-match count and local check");
  sep_verify->add_option("--in", in_path, "separator JSON (or a linear-insdel spec)")->required();
  sep_verify->add_option("--lambda", sep_lambda)->required();
  sep_verify->add_option("--budget", budget, "largest n for the exact verifier")->capture_default_str();
  sep_verify->add_option("--c", sep_cfg.c)->capture_default_str();

  // sync build | verify
  auto* sync_cmd = app.add_subcommand("sync", "eta-synchronization strings");
  sync_cmd->require_subcommand(1);
  double sync_eta = 0.01;
  std::size_t sync_n0 = 40;
  auto* sync_build = sync_cmd->add_subcommand("build", "rejection-sample a verified string");
  sync_build->add_option("--n0", sync_n0)->capture_default_str();
  sync_build->add_option("--eta", sync_eta)->capture_default_str();
  sync_build->add_option("--seed", seed)->capture_default_str();
  sync_build->add_option("--out", out_path)->capture_default_str();
  auto* sync_verify = sync_cmd->add_subcommand("verify", "check the interval property");
  sync_verify->add_option("--in", in_path)->required();

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "rate bounds as CSV");
  double b_delta = 0.1;
  std::uint64_t b_q = 2;
  std::size_t sweep = 0;
  bounds_cmd->add_option("--delta", b_delta)->capture_default_str();
  bounds_cmd->add_option("--q", b_q)->capture_default_str();
  bounds_cmd->add_option("--sweep", sweep, "emit delta = k/N for k = 0..N-1 instead of one row");
  bounds_cmd->add_option("--out", out_path)->capture_default_str();
  std::string table_format = "csv";
  bounds_cmd->add_option("--format", table_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // experiment run
  auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo experiments");
  exp_cmd->require_subcommand(1);
  auto* exp_run = exp_cmd->add_subcommand("run", "run one experiment and write CSV");
  ExperimentOpts eo;
  exp_run->add_option("--kind", eo.cfg.kind)
      ->check(CLI::IsMember({"random-code-distance", "systematic-distance", "decode-sweep", "systematic-wrapper"}))
      ->capture_default_str();
  eo.field.add(exp_run, 0);
  exp_run->add_option("--n", eo.cfg.n)->capture_default_str();
  exp_run->add_option("--m", eo.cfg.m)->capture_default_str();
  exp_run->add_option("--delta", eo.cfg.delta)->capture_default_str();
  exp_run->add_option("--trials", eo.cfg.trials)->capture_default_str();
  exp_run->add_option("--seed", eo.cfg.seed)->capture_default_str();
  exp_run->add_option("--n-c", eo.cfg.n_c)->capture_default_str();
  exp_run->add_option("--kappa-c", eo.cfg.kappa_c)->capture_default_str();
  exp_run->add_option("--fraction", eo.cfg.fraction)->capture_default_str();
  exp_run->add_option("--k-max", eo.cfg.k_max, "sweep upper end, 0 for 3 kappa + 3")->capture_default_str();
  exp_run->add_option("--code", eo.code, "linear-insdel spec instead of building the explicit instance");
  exp_run->add_option("--out", eo.out)->capture_default_str();
  exp_run->add_option("--format", table_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*field_cmd) {
      const auto f = Field::make(field_opts.spec());
      json j = to_json(f->spec());
      if (!field_op.empty()) {
        if (op_a >= f->size() || op_b >= f->size()) throw UsageError("operands must be field elements");
        const auto a = static_cast<Symbol>(op_a), b = static_cast<Symbol>(op_b);
        Symbol r = 0;
        if (field_op == "add") r = f->add(a, b);
        else if (field_op == "sub") r = f->sub(a, b);
        else if (field_op == "mul") r = f->mul(a, b);
        else if (field_op == "div") r = f->div(a, b);
        else if (field_op == "inv") r = f->inv(a);
        else r = f->pow(a, op_b);
        j["op"] = field_op;
        j["result"] = r;
      }
      std::cout << dump(j);
    } else if (*build_cmd) {
      write_file(bo.out, dump(build_code(bo)));
    } else if (*insdel_cmd) {
      const auto code = insdel_code_from_json(read_json(code_path));
      const auto& f = *code.inner().field();
      const auto in = read_symbols(in_path, format, f);
      if (*ins_enc) {
        write_symbols(out_path, format, f, code.encode(in));
      } else if (*ins_dec) {
        const auto msg = insdel_decode(code, in);
        if (!msg) throw Failure("decode-failure: received word is beyond the decoding radius");
        write_symbols(out_path, format, f, *msg);
      } else {
        write_symbols(out_path, format, f, insdel_channel<Symbol>(in, n_ins, n_del, f.size(), seed));
      }
    } else if (*affine_cmd) {
      if (*aff_cor) {
        const auto in = read_bits(in_path, bit_format);
        write_bits(out_path, bit_format, insdel_channel<std::uint8_t>(in, n_ins, n_del, 2, seed));
      } else {
        const auto code = code_path.empty() ? AffineCode::build(aff_eps, aff_n0, seed, aff_eta)
                                            : affine_code_from_json(read_json(code_path));
        const auto in = read_bits(in_path, bit_format);
        if (*aff_enc) {
          write_bits(out_path, bit_format, code.encode(in));
        } else {
          const auto msg = code.decode(in);
          if (!msg) throw Failure("decode-failure: received word is beyond the decoding radius");
          write_bits(out_path, bit_format, *msg);
        }
      }
    } else if (*sep_build) {
      const auto r = construct_explicit(sep_n, sep_lambda, sep_cfg);
      auto j = to_json(r.seq);
      j["lambda"] = sep_lambda;
      j["seed"] = r.seed;
      j["seeds_tried"] = r.seeds_tried;
      j["prg_w"] = r.prg.w;
      write_file(out_path, dump(j));
    } else if (*sep_verify) {
      const auto spec = read_json(in_path);
      const auto seq = separator_from_json(spec.contains("separator") ? spec.at("separator") : spec);
      const auto local = local_check(seq, sep_lambda, sep_cfg.c);
      json j = {{"n", seq.n()}, {"lambda", sep_lambda}, {"local_check", local.pass}, {"lambda0", local.lambda0}};
      bool ok = local.pass;
      if (seq.n() <= budget) {
        const auto exact = max_undesired(seq, budget);
        j["max_undesired"] = exact.count;
        ok = exact.count <= sep_lambda;
      }
      j["ok"] = ok;
      std::cout << dump(j);
      if (!ok) throw Failure("separator exceeds lambda = " + std::to_string(sep_lambda));
    } else if (*sync_build) {
      write_file(out_path, dump(to_json(construct_sync_string(sync_n0, sync_eta, seed, 1000,
                                                               std::max(sync_n0, kSyncVerifyBudget)))));
    } else if (*sync_verify) {
      const auto s = sync_string_from_json(read_json(in_path));
      const auto v = verify_eta(s, std::max(s.size(), kSyncVerifyBudget));
      json j = {{"n0", s.size()}, {"eta", s.eta}, {"ok", !v}};
      if (v) j["violation"] = {{"i", v->i}, {"j", v->j}, {"k", v->k}, {"edit_distance", v->edit_distance}};
      std::cout << dump(j);
      if (v) throw Failure("not an eta-synchronization string");
    } else if (*bounds_cmd) {
      std::ostringstream out;
      json rows_json = json::array();
      out << "delta,existence,half_singleton,half_plotkin\n";
      const std::size_t rows = sweep ? sweep : 1;
      for (std::size_t k = 0; k < rows; ++k) {
        const double d = sweep ? static_cast<double>(k) / static_cast<double>(sweep) : b_delta;
        const double e = existence_rate(d, b_q), s = half_singleton(d), p = half_plotkin(d, b_q);
        out << format_number(d) << ',' << format_number(e) << ',' << format_number(s) << ',' << format_number(p) << '\n';
        rows_json.push_back({{"delta", d}, {"existence", e}, {"half_singleton", s}, {"half_plotkin", p}});
      }
      write_file(out_path, table_format == "csv" ? out.str() : dump(rows_json));
    } else if (*exp_run) {
      const auto r = run_experiment(eo);
      if (table_format == "csv") {
        write_file(eo.out, csv_of(r));
      } else {
        json j = {{"config", r.config}, {"columns", r.columns}, {"rows", r.rows}, {"ok", r.ok}};
        for (const auto& [name, v] : r.aggregates) j["aggregates"][name] = v;
        write_file(eo.out, dump(j));
      }
      if (!r.ok) throw Failure("experiment assertion failed");
    }
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConstructionError& e) {
    std::cerr << "construction-failure: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const InvalidSpecError& e) {
    std::cerr << "invalid field: " << e.what() << " (factor " << e.witness() << ")\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "usage: malformed spec: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
