#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ltcm/constants.hpp"
#include "ltcm/curves.hpp"
#include "ltcm/galois.hpp"

namespace ltcm {

enum class Format { json, csv, text };
std::optional<Format> parse_format(std::string_view s);

/// One row per (curve, r): the constants schema, plus the difference.
nlohmann::json equality_json(const EqualityRow& row);
void write_equality(std::ostream& out, const std::vector<EqualityRow>& rows, Format format);

struct CountRow {
  std::string curve;
  std::int64_t r;
  std::uint64_t x;
  std::uint64_t count;
  double predicted;  // C sqrt(x) / log x
  double ratio;      // count / predicted, NaN when predicted is 0
  std::uint64_t seed;
  std::optional<std::string> poly;
  std::optional<std::uint64_t> poly_count;
};
void write_counts(std::ostream& out, const std::vector<CountRow>& rows, Format format);

nlohmann::json registry_json();
nlohmann::json group_json(const GaloisModel& model);

/// A reproduced row of the D >= 7 summary table. Each column is a rational
/// string, or "mixed" when the value is not constant over its range.
struct Table1Row {
  std::string curve;
  unsigned D;
  unsigned m_E;
  std::string kappa_odd;   // census ratio at odd traces in Gamma (0 if none)
  std::string kappa_even;  // census ratio at even traces in Gamma
  std::string legendre;    // (2r/D) over r in Gamma with D not dividing r
  std::string xi_odd;      // xi(D, r), odd r coprime to D
  std::string xi_even;     // xi(D, r), even r coprime to D
  std::string xi_D;        // xi_D at g = 1, over r in Gamma
  friend bool operator==(const Table1Row&, const Table1Row&) = default;
};

Table1Row table1_row(const CurveSpec& curve);
/// Rows for E3 ... E8, from live group computations.
std::vector<Table1Row> table1();
/// The published values, keyed by curve id.
nlohmann::json table1_expected();
/// One message per differing cell; empty when everything matches.
std::vector<std::string> table1_diff(const std::vector<Table1Row>& rows, const nlohmann::json& expected);
nlohmann::json table1_json(const Table1Row& row);
void write_table1(std::ostream& out, const std::vector<Table1Row>& rows, Format format);

}  // namespace ltcm
