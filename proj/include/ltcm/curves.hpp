#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltcm/rational.hpp"

namespace ltcm {

/// One registered CM curve in long Weierstrass form
/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct CurveSpec {
  std::string id;
  std::array<std::int64_t, 5> a;  // a1, a2, a3, a4, a6
  unsigned D;                     // squarefree CM parameter
  std::int64_t disc_K;            // field discriminant
  unsigned order_conductor;       // f
  unsigned m_E;
  std::vector<std::uint64_t> bad_primes;
  std::string isogeny_class;
  std::int64_t wanxi_g;  // g in the family normal form; 0 when the curve is not in that form
  std::string note;      // data-curation remarks
};

class UnknownCurve : public std::invalid_argument {
 public:
  explicit UnknownCurve(const std::string& id) : std::invalid_argument("unknown curve: " + id) {}
};

/// The 20 registered curves, grouped by isogeny class.
const std::vector<CurveSpec>& registry();
/// Throws UnknownCurve.
const CurveSpec& lookup(std::string_view id);
/// All members of the curve's isogeny class, in registry order.
std::vector<const CurveSpec*> class_members(const CurveSpec& curve);

/// Standard invariants of the long form, exact.
struct Invariants {
  i128 b2, b4, b6, b8, c4, c6, disc;
  Rational j() const;
};
Invariants invariants(const CurveSpec& curve);

/// y^2 = x^3 + A x + B, isomorphic to the long form over Q. (A*u^4, B*u^6)
/// are the integer coefficients used for reduction.
struct ShortForm {
  Rational A, B;
  std::uint64_t u;  // 1 means identity scale
  std::int64_t A_int, B_int;
};

class SingularCurve : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Throws SingularCurve if 4A^3 + 27B^2 = 0.
ShortForm to_short(const CurveSpec& curve);

/// (a, b) of the y^2 = 4x^3 + a x + b model, i.e. (4A, 4B).
std::pair<Rational, Rational> four_x_cubed_form(const CurveSpec& curve);

/// The D >= 7 table of (a, b) at g = 1, or nullopt for other D.
std::optional<std::pair<Rational, Rational>> wanxi_table_row(unsigned D);

/// True iff the 4x^3 model matches the table row scaled by the curve's
/// recorded g (a g^2, b g^3). Throws std::invalid_argument for D < 7.
bool verify_wanxi_form(const CurveSpec& curve);

struct CurveModP {
  std::uint64_t p;
  std::uint64_t A, B;  // residues mod p
};

/// Short model mod p, or nullopt (bad reduction) when p is a curated bad
/// prime, p <= 3, or the discriminant vanishes mod p. p must be prime.
std::optional<CurveModP> reduce(const CurveSpec& curve, std::uint64_t p);

}  // namespace ltcm
