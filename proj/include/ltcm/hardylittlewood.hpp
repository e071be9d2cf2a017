#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ltcm/constants.hpp"
#include "ltcm/curves.hpp"
#include "ltcm/frobenius.hpp"

namespace ltcm {

/// a m^2 + b m + c with a > 0, b^2 - 4ac not a square, gcd(a, b, c) = 1 and
/// a + b, c not both even. The constructor enforces this.
class QuadPoly {
 public:
  QuadPoly(std::int64_t a, std::int64_t b, std::int64_t c);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t discriminant() const { return b_ * b_ - 4 * a_ * c_; }
  i128 operator()(std::int64_t m) const { return (static_cast<i128>(a_) * m + b_) * m + c_; }
  std::string to_string() const;

  friend bool operator==(const QuadPoly&, const QuadPoly&) = default;

 private:
  std::int64_t a_, b_, c_;
};

class ParityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The polynomial whose prime values carry trace r.
struct PolyBridge {
  QuadPoly poly;
  int case_no;     // 1: p = (r/2)^2 + D n^2; 2: p = (D+1)(r/2)^2 - D r m + D m^2
  bool cleared;    // true if coefficients were multiplied through to integers
  std::string variable;
};

/// Case 1 when D = 1, 2 mod 4 (needs 2 | r, else ParityError); Case 2 when
/// D = 3 mod 4, with n = r - 2m substituted. For D = 3 mod 4 the constant
/// (D+1)/4 is integral, so Case 2 never needs clearing.
/// Throws std::invalid_argument if the result violates the QuadPoly rules.
PolyBridge poly_for(const CurveSpec& curve, std::int64_t r);

/// gcd(2, a+b) d / (sqrt(a) phi(d)) * prod_{p not dividing 2a} (1 - (disc/p)/(p-1)),
/// d the odd part of gcd(a, b).
ConstantResult hl_constant(const QuadPoly& poly, std::uint64_t bound = kDefaultBound,
                           Method mode = Method::accelerated);

/// Exact rational part gcd(2, a+b) d / phi(d) of the front factor; the
/// 1/sqrt(a) stays symbolic.
Rational hl_front_rational(const QuadPoly& poly);

struct PolyCountOptions {
  std::int64_t m_start = 1;  // m in N means m >= 1
  std::uint64_t ceiling = kDefaultCountCeiling;
};

/// Distinct primes p <= x of the form poly(m), m >= m_start. The returned
/// CountResult carries r = 0 and no exclusions.
CountResult count_poly_primes(const QuadPoly& poly, std::uint64_t x, const PolyCountOptions& options = {});

/// Debug dump: CSV "m,value,is_prime" for every m with 0 < poly(m) <= x.
void write_poly_csv(std::ostream& out, const QuadPoly& poly, std::uint64_t x, const PolyCountOptions& options = {});

}  // namespace ltcm
