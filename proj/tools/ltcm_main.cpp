#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ltcm/arith.hpp"
#include "ltcm/constants.hpp"
#include "ltcm/curves.hpp"
#include "ltcm/frobenius.hpp"
#include "ltcm/galois.hpp"
#include "ltcm/hardylittlewood.hpp"
#include "ltcm/report.hpp"

namespace {

using namespace ltcm;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string curve;
  bool all = false;
  std::string r = "2";
  std::string x = "1e6";
  std::string bound = "1e6";
  double tol = 1e-6;
  std::string mode = "accelerated";
  std::string format = "text";
  std::string cache_dir;
  std::uint64_t seed = kDefaultSeed;
  bool with_poly = false;
  std::string poly_csv;
  std::string expected;
};

// Accepts integers and scientific shorthand such as 1e6.
std::uint64_t parse_count(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": not a number: " + s);
  }
  if (used != s.size() || !(v >= 0) || v != std::floor(v) || v > 1e18) {
    throw UsageError(std::string(what) + ": expected a nonnegative integer, got " + s);
  }
  return static_cast<std::uint64_t>(v);
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw UsageError("--r: not an integer: " + s);
  }
  if (used != s.size()) throw UsageError("--r: not an integer: " + s);
  return v;
}

// "a..b" or a comma list; 0 is dropped from ranges and rejected in lists.
std::vector<std::int64_t> parse_r(const std::string& spec) {
  std::vector<std::int64_t> out;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const std::int64_t lo = parse_int(spec.substr(0, dots));
    const std::int64_t hi = parse_int(spec.substr(dots + 2));
    if (lo > hi) throw UsageError("--r: empty range " + spec);
    if (hi - lo > 100000) throw UsageError("--r: range too long");
    for (std::int64_t r = lo; r <= hi; ++r) {
      if (r != 0) out.push_back(r);
    }
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::int64_t r = parse_int(item);
      if (r == 0) throw UsageError("--r: r = 0 is excluded for CM curves");
      out.push_back(r);
    }
  }
  if (out.empty()) throw UsageError("--r: no values selected");
  return out;
}

std::vector<const CurveSpec*> select_curves(const RunConfig& cfg) {
  std::vector<const CurveSpec*> out;
  if (cfg.all) {
    if (!cfg.curve.empty()) throw UsageError("--curve and --all are exclusive");
    for (const auto& c : registry()) out.push_back(&c);
    return out;
  }
  if (cfg.curve.empty()) throw UsageError("select curves with --curve <id> or --all");
  std::stringstream ss(cfg.curve);
  std::string id;
  while (std::getline(ss, id, ',')) {
    try {
      out.push_back(&lookup(id));
    } catch (const UnknownCurve& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

Format format_of(const RunConfig& cfg) {
  const auto f = parse_format(cfg.format);
  if (!f) throw UsageError("--format must be json, csv or text");
  return *f;
}

Method mode_of(const RunConfig& cfg) {
  const auto m = parse_method(cfg.mode);
  if (!m || *m == Method::closed_form) throw UsageError("--mode must be direct or accelerated");
  return *m;
}

std::uint64_t bound_of(const RunConfig& cfg) {
  const std::uint64_t b = parse_count(cfg.bound, "--bound");
  if (b < kMinProductBound || b > kMaxSieveBound) throw UsageError("--bound must lie in [1e3, 1e9]");
  return b;
}

std::vector<EqualityRow> equality_rows(const RunConfig& cfg) {
  if (!(cfg.tol > 0)) throw UsageError("--tol must be positive");
  const auto curves = select_curves(cfg);
  const auto rs = parse_r(cfg.r);
  const auto bound = bound_of(cfg);
  const auto mode = mode_of(cfg);
  std::vector<EqualityRow> rows;
  for (const CurveSpec* c : curves) {
    auto part = verify_equality(*c, rs, cfg.tol, bound, mode);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

int cmd_constants(const RunConfig& cfg) {
  const auto rows = equality_rows(cfg);
  write_equality(std::cout, rows, format_of(cfg));
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const auto rows = equality_rows(cfg);
  write_equality(std::cout, rows, format_of(cfg));
  std::size_t failed = 0;
  for (const auto& row : rows) failed += (row.pass && row.zero_agree) ? 0 : 1;
  std::cerr << rows.size() - failed << "/" << rows.size() << " rows pass\n";
  return failed == 0 ? kOk : kFail;
}

int cmd_count(const RunConfig& cfg) {
  const auto curves = select_curves(cfg);
  const auto rs = parse_r(cfg.r);
  const auto bound = bound_of(cfg);
  const auto mode = mode_of(cfg);
  const std::uint64_t x = parse_count(cfg.x, "--x");
  if (x < 5) throw UsageError("--x must be at least 5");
  if (x > kDefaultCountCeiling) throw UsageError("--x exceeds the counting ceiling 1e8");
  const Format format = format_of(cfg);

  CountOptions opt;
  opt.cm.seed = cfg.seed;
  if (!cfg.cache_dir.empty()) opt.cache_dir = cfg.cache_dir;
  const std::set<std::int64_t> targets(rs.begin(), rs.end());
  const double scale = std::sqrt(static_cast<double>(x)) / std::log(static_cast<double>(x));

  std::ofstream poly_csv;
  if (!cfg.poly_csv.empty()) {
    poly_csv.open(cfg.poly_csv);
    if (!poly_csv) throw UsageError("cannot open " + cfg.poly_csv);
  }

  std::vector<CountRow> rows;
  for (const CurveSpec* c : curves) {
    const auto counts = count_traces(*c, x, targets, opt);
    for (std::int64_t r : targets) {
      CountRow row{c->id, r, x, counts.at(r).count, 0.0, std::numeric_limits<double>::quiet_NaN(), cfg.seed, {}, {}};
      row.predicted = lt_constant(*c, r, bound, mode).value * scale;
      if (row.predicted > 0) row.ratio = static_cast<double>(row.count) / row.predicted;
      if (cfg.with_poly) {
        try {
          const PolyBridge bridge = poly_for(*c, r);
          row.poly = bridge.poly.to_string();
          row.poly_count = count_poly_primes(bridge.poly, x).count;
          if (poly_csv) write_poly_csv(poly_csv, bridge.poly, x);
        } catch (const std::invalid_argument& e) {
          row.poly = std::string("n/a (") + e.what() + ")";
        }
      }
      rows.push_back(std::move(row));
    }
  }
  write_counts(std::cout, rows, format);
  return kOk;
}

int cmd_table1(const RunConfig& cfg) {
  const Format format = format_of(cfg);
  nlohmann::json expected = table1_expected();
  if (!cfg.expected.empty()) {
    std::ifstream in(cfg.expected);
    if (!in) throw UsageError("cannot open " + cfg.expected);
    try {
      expected = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("--expected: ") + e.what());
    }
  }
  const auto rows = table1();
  write_table1(std::cout, rows, format);
  const auto diff = table1_diff(rows, expected);
  for (const auto& d : diff) std::cerr << "mismatch: " << d << '\n';
  return diff.empty() ? kOk : kFail;
}

int cmd_registry() {
  std::cout << registry_json().dump(2) << '\n';
  return kOk;
}

int cmd_group(const RunConfig& cfg) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CurveSpec* c : select_curves(cfg)) arr.push_back(group_json(build_group(*c)));
  std::cout << arr.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lang-Trotter and Hardy-Littlewood constants for the registered CM curves"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  RunConfig cfg;
  app.add_option("--curve", cfg.curve, "curve id, or a comma list of ids");
  app.add_flag("--all", cfg.all, "select every registered curve");
  app.add_option("--r", cfg.r, "trace selection: a..b or a comma list")->capture_default_str();
  app.add_option("--x", cfg.x, "counting bound")->capture_default_str();
  app.add_option("--bound", cfg.bound, "prime bound for Euler products")->capture_default_str();
  app.add_option("--tol", cfg.tol, "relative tolerance for verify")->capture_default_str();
  app.add_option("--mode", cfg.mode, "direct or accelerated")->capture_default_str();
  app.add_option("--format", cfg.format, "json, csv or text")->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir, "directory for trace CSV caches");
  app.add_option("--seed", cfg.seed, "seed for trace sign disambiguation")->capture_default_str();
  app.add_flag("--with-poly", cfg.with_poly, "count primes of the matching quadratic polynomial too");
  app.add_option("--poly-csv", cfg.poly_csv, "with --with-poly, write m,value,is_prime rows here");
  app.add_option("--expected", cfg.expected, "table1: JSON of expected cells");

  auto* constants = app.add_subcommand("constants", "print omega_bar and C for the selection")->fallthrough();
  auto* verify = app.add_subcommand("verify", "check omega_bar = C; exit 1 on any failure")->fallthrough();
  auto* count = app.add_subcommand("count", "count traces and compare with C sqrt(x)/log x")->fallthrough();
  auto* table1_cmd = app.add_subcommand("table1", "rebuild the D >= 7 summary table")->fallthrough();
  auto* registry_cmd = app.add_subcommand("registry", "dump the curve registry as JSON")->fallthrough();
  auto* group_cmd = app.add_subcommand("group", "dump Galois models and trace censuses as JSON")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*constants) return cmd_constants(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*count) return cmd_count(cfg);
    if (*table1_cmd) return cmd_table1(cfg);
    if (*registry_cmd) return cmd_registry();
    if (*group_cmd) return cmd_group(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
