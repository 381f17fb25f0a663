// Command line front end: census tables, formula-vs-oracle verification,
// orbit and pattern inspection, and matrix reduction.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unitri/census.hpp"
#include "unitri/oracle.hpp"
#include "unitri/quasimonomial.hpp"

using namespace unitri;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kMismatch = 1, kUsage = 2, kResource = 3, kInternal = 4 };

json json_int(const BigInt& v) {
  if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max())
    return static_cast<int64_t>(v);
  return v.str();  // too wide for a faithful JSON number
}

struct CommonOptions {
  int threads = 1;
  uint64_t max_order = uint64_t(1) << 21;
  double work_limit = 1e10;
  std::string cache_dir;
  bool no_cache = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--threads", threads, "worker threads for oracle loops");
    cmd->add_option("--max-order", max_order, "largest group order the oracle enumerates");
    cmd->add_option("--work-limit", work_limit, "guard on #classes * |G|");
    cmd->add_option("--cache-dir", cache_dir,
                    "oracle cache directory (default: $UNITRI_CACHE_DIR)");
    cmd->add_flag("--no-cache", no_cache, "disable the oracle disk cache");
  }

  OracleOptions oracle() const {
    OracleOptions opts;
    opts.threads = threads;
    opts.max_group_order = max_order;
    opts.max_class_work = work_limit;
    if (!no_cache) {
      if (!cache_dir.empty()) {
        opts.cache_dir = cache_dir;
      } else if (const char* env = std::getenv("UNITRI_CACHE_DIR"); env && *env) {
        opts.cache_dir = env;
      } else if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
        opts.cache_dir = std::filesystem::path(xdg) / "unitri";
      } else if (const char* home = std::getenv("HOME"); home && *home) {
        opts.cache_dir = std::filesystem::path(home) / ".cache" / "unitri";
      }
    }
    return opts;
  }
};

std::vector<int> parse_exponents(const std::string& arg) {
  if (arg == "all") return {0, 1, 2, 3};
  int e = 0;
  try {
    size_t used = 0;
    e = std::stoi(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::exception&) {
    throw ValidationError("census: e must be an integer in 0..3 or \"all\"");
  }
  if (e < 0) throw ValidationError("census: e must be >= 0 or \"all\"");
  if (e > 3)
    throw UnsupportedError("census: only e <= 3 is covered; degrees above q^3 are out of scope");
  return {e};
}

struct CensusRow {
  int e = 0;
  QPoly poly;                        // in q
  std::vector<BigInt> coefficients;  // in the requested basis
};

json census_row_json(int n, const CensusRow& row, const std::string& basis,
                     const std::vector<uint32_t>& eval_primes) {
  json obj;
  obj["n"] = n;
  obj["e"] = row.e;
  obj["basis"] = basis;
  json coeffs = json::array();
  for (const BigInt& c : row.coefficients) coeffs.push_back(json_int(c));
  obj["coefficients"] = coeffs;
  json evals = json::object();
  for (uint32_t p : eval_primes) evals[std::to_string(p)] = json_int(row.poly.evaluate_int(p));
  obj["evaluations"] = evals;
  return obj;
}

int run_census(int n, const std::string& e_arg, const std::string& basis,
               std::vector<uint32_t> eval_primes, const std::string& format) {
  for (uint32_t p : eval_primes) PrimeField check(p);  // primality of evaluation points
  std::vector<CensusRow> rows;
  for (int e : parse_exponents(e_arg)) {
    CensusRow row;
    row.e = e;
    row.poly = count(n, e);
    if (basis == "q") {
      for (int k = 0; k <= row.poly.degree(); ++k)
        row.coefficients.push_back(numerator(row.poly.coefficient(k)));
    } else {
      row.coefficients = to_qminus1_basis(row.poly).coefficients;
    }
    rows.push_back(std::move(row));
  }

  if (format == "json") {
    if (rows.size() == 1) {
      std::cout << census_row_json(n, rows[0], basis, eval_primes).dump(2) << "\n";
    } else {
      json arr = json::array();
      for (const CensusRow& row : rows) arr.push_back(census_row_json(n, row, basis, eval_primes));
      std::cout << arr.dump(2) << "\n";
    }
  } else if (format == "csv") {
    std::cout << "n,e,basis,coefficients";
    for (uint32_t p : eval_primes) std::cout << ",q=" << p;
    std::cout << "\n";
    for (const CensusRow& row : rows) {
      std::cout << n << "," << row.e << "," << basis << ",";
      for (size_t k = 0; k < row.coefficients.size(); ++k)
        std::cout << (k ? " " : "") << row.coefficients[k].str();
      for (uint32_t p : eval_primes) std::cout << "," << row.poly.evaluate_int(p).str();
      std::cout << "\n";
    }
  } else {  // md
    const std::string var = basis == "q" ? "q" : "u";
    std::cout << "| n |";
    for (const CensusRow& row : rows) std::cout << " e=" << row.e << " |";
    std::cout << "\n|---|";
    for (size_t i = 0; i < rows.size(); ++i) std::cout << "---|";
    std::cout << "\n| " << n << " |";
    for (const CensusRow& row : rows) {
      QPoly shown = basis == "q" ? row.poly : row.poly.shifted_down_one();
      std::cout << " " << shown.to_string(var) << " |";
    }
    std::cout << "\n";
    for (uint32_t p : eval_primes) {
      std::cout << "| q=" << p << " |";
      for (const CensusRow& row : rows) std::cout << " " << row.poly.evaluate_int(p).str() << " |";
      std::cout << "\n";
    }
  }
  return kOk;
}

int run_verify(int n, uint32_t p, int e_max, const CommonOptions& common,
               const std::string& format) {
  const PrimeField field(p);
  const int top = std::min(std::min(3, mu(n)), e_max);
  DegreeCensus oracle;
  try {
    oracle = degree_census_oracle(n, p, -1, common.oracle());
  } catch (const ResourceError& e) {
    if (format == "json") {
      json obj{{"n", n}, {"p", p}, {"status", "skipped"}, {"reason", e.what()}};
      std::cout << obj.dump(2) << "\n";
    } else {
      std::cout << "U_" << n << "(" << p << "): skipped (" << e.what() << ")\n";
    }
    return kResource;
  }

  bool all_match = true;
  json entries = json::array();
  std::ostringstream text;
  text << "U_" << n << "(" << p << "): comparing e = 0.." << top << "\n";
  for (int e = 0; e <= top; ++e) {
    const BigInt formula = count(n, e).evaluate_int(p);
    const uint64_t observed = oracle.by_exponent.count(e) ? oracle.by_exponent[e] : 0;
    const bool match = formula == BigInt(observed);
    all_match = all_match && match;
    entries.push_back({{"e", e},
                       {"formula", json_int(formula)},
                       {"oracle", observed},
                       {"match", match}});
    text << "  e=" << e << ": formula " << formula.str() << "  oracle " << observed
         << "  " << (match ? "match" : "MISMATCH") << "\n";
  }
  text << "result: " << (all_match ? "PASS" : "FAIL") << "\n";
  if (format == "json") {
    json obj{{"n", n}, {"p", p}, {"status", all_match ? "pass" : "fail"},
             {"entries", entries}};
    std::cout << obj.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return all_match ? kOk : kMismatch;
}

int run_orbits(int s, int t, uint32_t p, const std::string& format) {
  const PrimeField field(p);
  const OrbitPartition part = brute_orbits(s, t, field);
  const auto reps = enumerate_representatives(s, t, field);
  bool consistent = reps.size() == part.count();

  json rows = json::array();
  std::ostringstream text;
  text << "F^{" << s << "x" << t << "} over GF(" << p << "): " << part.total
       << " matrices, " << part.count() << " orbits\n";
  for (const FieldMatrix& rep : reps) {
    const QuasimonomialForm form = standard_form(rep);
    const uint32_t orbit = part.orbit_of[dense_matrix_id(rep)];
    const uint64_t bfs_size = part.sizes[orbit];
    std::optional<BigInt> formula;
    if (t <= 2) {
      formula = orbit_size_formula(form, field);
      consistent = consistent && *formula == BigInt(bfs_size);
    }
    text << "  len=" << form.length() << "  size=" << bfs_size;
    if (formula) text << "  formula=" << formula->str();
    text << "  " << form.to_string() << "\n";
    json row{{"length", form.length()}, {"size", bfs_size}, {"form", form.to_string()}};
    if (formula) row["formula_size"] = json_int(*formula);
    rows.push_back(std::move(row));
  }
  const BigInt predicted = count_representatives(s, t).evaluate_int(p);
  consistent = consistent && predicted == BigInt(part.count());
  text << "orbit count polynomial at q=" << p << ": " << predicted.str() << "  "
       << (consistent ? "consistent" : "INCONSISTENT") << "\n";
  if (format == "json") {
    json obj{{"s", s}, {"t", t}, {"p", p},   {"total", part.total},
             {"orbits", rows},  {"count", part.count()},
             {"consistent", consistent}};
    std::cout << obj.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return consistent ? kOk : kMismatch;
}

int run_pattern(const std::string& kind, int n, int i, int j, const std::string& format) {
  ClosedPattern pat = [&] {
    if (kind == "U") return pattern_U(n);
    if (kind == "P") return pattern_P(n, i);
    if (kind == "Q") return pattern_Q(n, i, j);
    throw ValidationError("pattern: --kind must be U, P or Q");
  }();
  const std::vector<Pair> minimal = minimal_pairs(pat);
  if (format == "json") {
    auto pair_list = [](const std::vector<Pair>& pairs) {
      json arr = json::array();
      for (const Pair& pr : pairs) arr.push_back({pr.i, pr.j});
      return arr;
    };
    json obj{{"kind", kind},
             {"n", n},
             {"pairs", pair_list(pat.pairs())},
             {"minimal_pairs", pair_list(minimal)},
             {"order_exponent", pat.size()},
             {"linear_character_exponent", minimal.size()}};
    std::cout << obj.dump(2) << "\n";
  } else {
    std::ostringstream mp;
    for (size_t k = 0; k < minimal.size(); ++k)
      mp << (k ? " " : "") << "(" << minimal[k].i << "," << minimal[k].j << ")";
    std::cout << "pattern: " << pat.to_string() << "\n";
    std::cout << "minimal pairs: " << mp.str() << "\n";
    std::cout << "order exponent: " << pat.size() << "  (|G| = q^" << pat.size() << ")\n";
    std::cout << "N_1 exponent: " << minimal.size() << "  (N_1 = q^" << minimal.size()
              << ")\n";
  }
  return kOk;
}

int run_reduce(const std::string& path, const std::string& format) {
  FieldMatrix x = [&] {
    if (path == "-") return read_matrix_text(std::cin);
    std::ifstream in(path);
    if (!in) throw ParseError("reduce: cannot open " + path);
    return read_matrix_text(in);
  }();
  const ReductionResult r = reduce(x);
  const FieldMatrix product = mat_mul(mat_mul(unitri_inverse(r.left), x), r.right);
  const bool verified = product == r.canonical && is_quasimonomial(r.canonical);
  if (format == "json") {
    auto matrix_rows = [](const FieldMatrix& m) {
      json rows = json::array();
      for (int a = 0; a < m.rows(); ++a) {
        json row = json::array();
        for (int b = 0; b < m.cols(); ++b) row.push_back(m.at(a, b));
        rows.push_back(std::move(row));
      }
      return rows;
    };
    json obj{{"p", x.field().order()},
             {"Q", matrix_rows(r.canonical)},
             {"A", matrix_rows(r.left)},
             {"B", matrix_rows(r.right)},
             {"standard_form", standard_form(r.canonical).to_string()},
             {"verified", verified}};
    std::cout << obj.dump(2) << "\n";
  } else {
    std::cout << "Q =\n" << r.canonical.to_string() << "\n";
    std::cout << "A =\n" << r.left.to_string() << "\n";
    std::cout << "B =\n" << r.right.to_string() << "\n";
    std::cout << "A^{-1} X B =\n" << product.to_string() << "\n";
    std::cout << "standard form: " << standard_form(r.canonical).to_string() << "\n";
    std::cout << "verified: " << (verified ? "true" : "false") << "\n";
  }
  return verified ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"character degree census of unitriangular groups U_n(q)"};
  app.require_subcommand(1);

  // census
  auto* census_cmd = app.add_subcommand("census", "closed-form counts N_{q^e}(U_n)");
  int census_n = 0;
  std::string census_e = "all", census_basis = "q", census_format = "json";
  std::vector<uint32_t> census_eval;
  census_cmd->add_option("--n", census_n, "matrix size n")->required();
  census_cmd->add_option("--e", census_e, "degree exponent (0..3 or \"all\")");
  census_cmd->add_option("--basis", census_basis, "coefficient basis")
      ->check(CLI::IsMember({"q", "q-1"}));
  census_cmd->add_option("--eval", census_eval, "evaluate at these primes (repeatable)");
  census_cmd->add_option("--format", census_format, "output format")
      ->check(CLI::IsMember({"json", "csv", "md"}));

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "formulas against the brute-force oracle");
  int verify_n = 0, verify_emax = 3;
  uint32_t verify_p = 0;
  std::string verify_format = "text";
  CommonOptions verify_common;
  verify_cmd->add_option("--n", verify_n, "matrix size n")->required();
  verify_cmd->add_option("--p", verify_p, "field characteristic")->required();
  verify_cmd->add_option("--e-max", verify_emax, "largest exponent to compare");
  verify_cmd->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));
  verify_common.attach(verify_cmd);

  // orbits
  auto* orbits_cmd = app.add_subcommand("orbits", "orbit representatives on F^{s x t}");
  int orb_s = 0, orb_t = 0;
  uint32_t orb_p = 0;
  std::string orbits_format = "text";
  orbits_cmd->add_option("--s", orb_s, "rows")->required();
  orbits_cmd->add_option("--t", orb_t, "columns")->required();
  orbits_cmd->add_option("--p", orb_p, "field characteristic")->required();
  orbits_cmd->add_option("--format", orbits_format)->check(CLI::IsMember({"text", "json"}));

  // pattern
  auto* pattern_cmd = app.add_subcommand("pattern", "closed pattern inspection");
  std::string pat_kind;
  int pat_n = 0, pat_i = 0, pat_j = 0;
  std::string pattern_format = "text";
  pattern_cmd->add_option("--kind", pat_kind, "U, P or Q")->required();
  pattern_cmd->add_option("--n", pat_n, "matrix size n")->required();
  pattern_cmd->add_option("--i", pat_i, "first column index (P and Q)");
  pattern_cmd->add_option("--j", pat_j, "second column index (Q)");
  pattern_cmd->add_option("--format", pattern_format)->check(CLI::IsMember({"text", "json"}));

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "canonical form of a matrix file");
  std::string reduce_path;
  std::string reduce_format = "text";
  reduce_cmd->add_option("--matrix", reduce_path, "matrix text file (\"-\" for stdin)")
      ->required();
  reduce_cmd->add_option("--format", reduce_format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (census_cmd->parsed())
      return run_census(census_n, census_e, census_basis, census_eval, census_format);
    if (verify_cmd->parsed())
      return run_verify(verify_n, verify_p, verify_emax, verify_common, verify_format);
    if (orbits_cmd->parsed()) return run_orbits(orb_s, orb_t, orb_p, orbits_format);
    if (pattern_cmd->parsed())
      return run_pattern(pat_kind, pat_n, pat_i, pat_j, pattern_format);
    if (reduce_cmd->parsed()) return run_reduce(reduce_path, reduce_format);
  } catch (const ResourceError& e) {
    std::cerr << "resource: " << e.what() << "\n";
    return kResource;
  } catch (const UnsupportedError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
