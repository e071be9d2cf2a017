#include "ltcm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "ltcm/arith.hpp"

namespace ltcm {

namespace {

std::string num(double v, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string rat(const Rational& q) { return q.to_string(); }

// Collapses a set of values to its single member, or "mixed".
std::string uniform(const std::set<std::string>& values, const std::string& empty) {
  if (values.empty()) return empty;
  return values.size() == 1 ? *values.begin() : "mixed";
}

const char* kTable1Columns[] = {"m_E", "kappa_odd", "kappa_even", "legendre_2r_D", "xi_odd", "xi_even", "xi_D"};

}  // namespace

std::optional<Format> parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  return std::nullopt;
}

nlohmann::json equality_json(const EqualityRow& row) {
  return {{"curve", row.curve},
          {"r", row.r},
          {"omega_bar", row.omega_bar.value},
          {"C", row.C.value},
          {"method", to_string(row.C.method)},
          {"bound", row.C.truncation},
          {"est_error", std::max(row.omega_bar.est_error, row.C.est_error)},
          {"pass", row.pass && row.zero_agree}};
}

void write_equality(std::ostream& out, const std::vector<EqualityRow>& rows, Format format) {
  switch (format) {
    case Format::json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& row : rows) arr.push_back(equality_json(row));
      out << arr.dump(2) << '\n';
      return;
    }
    case Format::csv:
      out << "curve,r,omega_bar,C,method,bound,est_error,pass\n";
      for (const auto& row : rows) {
        const auto j = equality_json(row);
        out << row.curve << ',' << row.r << ',' << num(row.omega_bar.value) << ',' << num(row.C.value) << ','
            << to_string(row.C.method) << ',' << row.C.truncation << ',' << num(j["est_error"].get<double>()) << ','
            << (j["pass"].get<bool>() ? "true" : "false") << '\n';
      }
      return;
    case Format::text:
      for (const auto& row : rows) {
        out << row.curve << "  r=" << row.r << "  omega_bar=" << num(row.omega_bar.value, "%.12g")
            << "  C=" << num(row.C.value, "%.12g") << "  diff=" << num(row.diff, "%.3g")
            << ((row.pass && row.zero_agree) ? "  PASS" : "  FAIL") << '\n';
      }
      return;
  }
}

void write_counts(std::ostream& out, const std::vector<CountRow>& rows, Format format) {
  const auto to_json = [](const CountRow& row) {
    nlohmann::json j = {{"curve", row.curve},   {"r", row.r},
                        {"x", row.x},           {"count", row.count},
                        {"predicted", row.predicted}, {"seed", row.seed}};
    j["ratio"] = std::isnan(row.ratio) ? nlohmann::json(nullptr) : nlohmann::json(row.ratio);
    if (row.poly) j["poly"] = *row.poly;
    if (row.poly_count) j["poly_count"] = *row.poly_count;
    return j;
  };
  switch (format) {
    case Format::json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& row : rows) arr.push_back(to_json(row));
      out << arr.dump(2) << '\n';
      return;
    }
    case Format::csv:
      out << "curve,r,x,count,predicted,ratio,seed,poly,poly_count\n";
      for (const auto& row : rows) {
        out << row.curve << ',' << row.r << ',' << row.x << ',' << row.count << ',' << num(row.predicted) << ','
            << (std::isnan(row.ratio) ? "" : num(row.ratio)) << ',' << row.seed << ',' << row.poly.value_or("") << ','
            << (row.poly_count ? std::to_string(*row.poly_count) : "") << '\n';
      }
      return;
    case Format::text:
      for (const auto& row : rows) {
        out << row.curve << "  r=" << row.r << "  x=" << row.x << "  count=" << row.count
            << "  predicted=" << num(row.predicted, "%.6g")
            << "  ratio=" << (std::isnan(row.ratio) ? "n/a" : num(row.ratio, "%.4f"));
        if (row.poly) out << "  poly[" << *row.poly << "]=" << (row.poly_count ? std::to_string(*row.poly_count) : "n/a");
        out << '\n';
      }
      return;
  }
}

nlohmann::json registry_json() {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : registry()) {
    arr.push_back({{"id", c.id},
                   {"coefficients", c.a},
                   {"D", c.D},
                   {"disc_K", c.disc_K},
                   {"f", c.order_conductor},
                   {"m_E", c.m_E},
                   {"bad_primes", c.bad_primes},
                   {"isogeny_class", c.isogeny_class},
                   {"note", c.note}});
  }
  return arr;
}

nlohmann::json group_json(const GaloisModel& model) {
  nlohmann::json census = nlohmann::json::object();
  for (const auto& [t, n] : trace_census(model.group)) census[std::to_string(t)] = n;
  return {{"curve", model.curve_id},
          {"modulus", model.group.modulus()},
          {"order", model.group.order()},
          {"label", model.group.label()},
          {"recipe", model.recipe},
          {"census", census}};
}

Table1Row table1_row(const CurveSpec& curve) {
  if (curve.D < 7) throw std::invalid_argument("table1_row: needs D >= 7");
  const GaloisModel& model = build_group(curve);
  const auto census = trace_census(model.group);
  const Rational order(static_cast<i128>(model.group.order()), 1);
  const std::int64_t D = curve.D;
  const GDecomposition one{};
  std::set<std::string> k_odd, k_even, leg, x_odd, x_even, x_D;
  for (std::int64_t r = 1; r <= static_cast<std::int64_t>(curve.m_E); ++r) {
    if (r % D != 0) (r % 2 ? x_odd : x_even).insert(std::to_string(xi(curve.D, r)));
    const auto it = census.find(static_cast<std::uint32_t>(r % curve.m_E));
    if (it == census.end() || it->second == 0) continue;
    (r % 2 ? k_odd : k_even).insert(rat(Rational(static_cast<i128>(it->second), 1) / order));
    if (r % D != 0) leg.insert(std::to_string(kronecker(2 * r, D)));
    x_D.insert(rat(xi_D(one, r)));
  }
  return {curve.id, curve.D, curve.m_E, uniform(k_odd, "0"), uniform(k_even, "0"), uniform(leg, "n/a"),
          uniform(x_odd, "n/a"), uniform(x_even, "n/a"), uniform(x_D, "n/a")};
}

std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  for (const char* id : {"E3", "E4", "E5", "E6", "E7", "E8"}) rows.push_back(table1_row(lookup(id)));
  return rows;
}

nlohmann::json table1_expected() {
  const auto row = [](unsigned m, const char* ko, const char* ke, const char* xo) {
    return nlohmann::json{{"m_E", m},   {"kappa_odd", ko}, {"kappa_even", ke}, {"legendre_2r_D", "1"},
                          {"xi_odd", xo}, {"xi_even", "1"}, {"xi_D", "1"}};
  };
  return {{"E3", row(28, "0", "1/6", "0")},       {"E4", row(44, "1/15", "1/30", "2")},
          {"E5", row(76, "1/27", "1/54", "2")},   {"E6", row(172, "1/63", "1/126", "2")},
          {"E7", row(268, "1/99", "1/198", "2")}, {"E8", row(652, "1/243", "1/486", "2")}};
}

nlohmann::json table1_json(const Table1Row& row) {
  return {{"curve", row.curve},        {"D", row.D},           {"m_E", row.m_E},
          {"kappa_odd", row.kappa_odd}, {"kappa_even", row.kappa_even}, {"legendre_2r_D", row.legendre},
          {"xi_odd", row.xi_odd},      {"xi_even", row.xi_even}, {"xi_D", row.xi_D}};
}

std::vector<std::string> table1_diff(const std::vector<Table1Row>& rows, const nlohmann::json& expected) {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    if (!expected.contains(row.curve)) {
      out.push_back(row.curve + ": no expected row");
      continue;
    }
    const auto live = table1_json(row);
    const auto& want = expected.at(row.curve);
    for (const char* col : kTable1Columns) {
      if (!want.contains(col)) continue;
      // Expected cells may be numbers or strings; compare textual forms.
      const auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
      if (text(live.at(col)) != text(want.at(col))) {
        out.push_back(row.curve + "." + col + ": computed " + text(live.at(col)) + ", expected " + text(want.at(col)));
      }
    }
  }
  return out;
}

void write_table1(std::ostream& out, const std::vector<Table1Row>& rows, Format format) {
  switch (format) {
    case Format::json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& row : rows) arr.push_back(table1_json(row));
      out << arr.dump(2) << '\n';
      return;
    }
    case Format::csv:
      out << "curve,D,m_E,kappa_odd,kappa_even,legendre_2r_D,xi_odd,xi_even,xi_D\n";
      for (const auto& r : rows) {
        out << r.curve << ',' << r.D << ',' << r.m_E << ',' << r.kappa_odd << ',' << r.kappa_even << ',' << r.legendre
            << ',' << r.xi_odd << ',' << r.xi_even << ',' << r.xi_D << '\n';
      }
      return;
    case Format::text: {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-4s %4s %5s %10s %10s %7s %7s %7s %5s\n", "E", "D", "m_E", "k_odd", "k_even",
                    "(2r/D)", "xi_odd", "xi_even", "xi_D");
      out << buf;
      for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-4s %4u %5u %10s %10s %7s %7s %7s %5s\n", r.curve.c_str(), r.D, r.m_E,
                      r.kappa_odd.c_str(), r.kappa_even.c_str(), r.legendre.c_str(), r.xi_odd.c_str(),
                      r.xi_even.c_str(), r.xi_D.c_str());
        out << buf;
      }
      return;
    }
  }
}

}  // namespace ltcm
