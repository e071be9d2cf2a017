#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltcm/curves.hpp"
#include "ltcm/rational.hpp"

namespace ltcm {

enum class Method { direct, accelerated, closed_form };
const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view s);

enum class ProductShape { lang_trotter, hardy_littlewood };

struct ConstantResult {
  double value = 0.0;
  Method method = Method::accelerated;
  std::uint64_t truncation = 0;  // prime bound
  double est_error = 0.0;
};

inline constexpr std::uint64_t kDefaultBound = 1'000'000ULL;
inline constexpr std::uint64_t kMinProductBound = 1'000ULL;

/// chi(n) = (disc / n).
struct DirichletChar {
  std::int64_t disc;
  int operator()(std::uint64_t n) const;
};

/// g = (-1)^delta 2^lambda D^mu g1 (mu = 0 for D in {1, 2}; 3^mu for D = 3).
struct GDecomposition {
  unsigned delta = 0;
  unsigned lambda = 0;
  unsigned mu = 0;
  std::uint64_t g1 = 1;
  std::int64_t reconstruct(unsigned D) const;
  friend bool operator==(const GDecomposition&, const GDecomposition&) = default;
};

class NormalizationMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Splits an integer g != 0 per the family convention for D.
GDecomposition decompose_integer(unsigned D, std::int64_t g);
/// Reads g off the curve's family normal form: y^2 = x^3 - g x (D = 1),
/// y^2 = x^3 + g (D = 3), or the 4x^3 table scaled by g (D = 2 and D >= 7).
/// Throws NormalizationMismatch when the model is not of that shape.
GDecomposition decompose_g(const CurveSpec& curve);
/// The class member omega_bar is evaluated on: the curve itself when it is
/// in normal form, otherwise the first normal-form member of its class.
const CurveSpec& wanxi_representative(const CurveSpec& curve);

/// Product over p^nu || g1 with p not dividing r and j not dividing nu of
/// -1/(p - 1 - (-D/p)). Exact.
Rational omega_factor(unsigned D, std::uint64_t g1, std::int64_t r, unsigned j);

// Sub-terms of the closed formulas, exposed for testing.
Rational kappa_d1(const GDecomposition& g, std::int64_t r);  // r even
Rational zeta1(const GDecomposition& g, std::int64_t r);     // 3 does not divide r
int zeta2(const GDecomposition& g, std::int64_t r);          // 3 does not divide r
Rational kappa_d3(const GDecomposition& g, std::int64_t r);
int xi(unsigned D, std::int64_t r);
Rational xi_D(const GDecomposition& g, std::int64_t r);

/// omega_bar = coefficient * sqrt(radicand) * prod_{p not dividing 2r}(1 - chi(p)/(p-1)).
struct WanXiTerms {
  Rational coefficient;
  unsigned radicand;
};
/// Throws std::invalid_argument for r = 0 or unsupported D.
WanXiTerms wanxi_terms(unsigned D, const GDecomposition& g, std::int64_t r);

/// Field discriminant whose character enters the product for parameter D.
std::int64_t field_discriminant(unsigned D);

ConstantResult omega_bar_formula(unsigned D, const GDecomposition& g, std::int64_t r, std::uint64_t bound = kDefaultBound,
                                 Method mode = Method::accelerated);
ConstantResult omega_bar(const CurveSpec& curve, std::int64_t r, std::uint64_t bound = kDefaultBound,
                         Method mode = Method::accelerated);

/// prod_{l | r, l not dividing m_E} l/(l - chi(l)), exact.
Rational lt_finite_factor(const CurveSpec& curve, std::int64_t r);
ConstantResult lt_constant(const CurveSpec& curve, std::int64_t r, std::uint64_t bound = kDefaultBound,
                           Method mode = Method::accelerated);

/// Product over primes p not in `exclude` of
///   hardy_littlewood: 1 - chi(p)/(p-1)
///   lang_trotter:     1 - chi(p)/((p-1)(p-chi(p)))
/// Direct mode truncates at bound. Accelerated mode factors out the matching
/// L-value (1/L(1,chi) for the HL shape, 1/L(2,chi) for the LT remainder)
/// and truncates a product whose factors are 1 + O(p^-3).
/// Throws std::invalid_argument for bound < 1000 or mode closed_form.
ConstantResult euler_product(DirichletChar chi, std::span<const std::uint64_t> exclude, ProductShape shape,
                             std::uint64_t bound, Method mode);

/// L(1, chi_disc) in closed form for the class-number-one discriminants
/// -3, -4, -7, -8, -11, -19, -43, -67, -163. Throws std::invalid_argument otherwise.
double l_closed(std::int64_t disc);
/// L(1, chi) = -(pi / |d|^{3/2}) sum_{a=1}^{|d|} chi(a) a for a negative
/// fundamental discriminant d.
double l_one(std::int64_t disc);
/// L(2, chi) = |d|^-2 sum_a chi(a) psi_1(a/|d|).
double l_two(std::int64_t disc);
bool is_fundamental_discriminant(std::int64_t d);

struct EqualityRow {
  std::string curve;
  std::int64_t r;
  ConstantResult omega_bar;
  ConstantResult C;
  double diff;       // |C - omega_bar|
  double rel_diff;   // diff / max(omega_bar, 1e-12)
  bool zero_agree;   // omega_bar == 0 exactly iff C == 0 exactly
  bool pass;
};

/// PASS iff (both |values| <= tol) or rel_diff <= tol. Throws for r = 0.
std::vector<EqualityRow> verify_equality(const CurveSpec& curve, std::span<const std::int64_t> rs, double tol,
                                         std::uint64_t bound = kDefaultBound, Method mode = Method::accelerated);

}  // namespace ltcm
