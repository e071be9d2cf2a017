#include "ltcm/constants.hpp"

#include <algorithm>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <set>

#include "ltcm/arith.hpp"
#include "ltcm/galois.hpp"

namespace ltcm {

const char* to_string(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::accelerated: return "accelerated";
    case Method::closed_form: return "closed_form";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view s) {
  if (s == "direct") return Method::direct;
  if (s == "accelerated") return Method::accelerated;
  if (s == "closed_form") return Method::closed_form;
  return std::nullopt;
}

int DirichletChar::operator()(std::uint64_t n) const { return kronecker(disc, static_cast<std::int64_t>(n)); }

namespace {

int neg1pow(i128 e) { return (e % 2 == 0) ? 1 : -1; }

// Re(i^k).
int re_i_pow(i128 k) {
  switch (static_cast<int>(((k % 4) + 4) % 4)) {
    case 0: return 1;
    case 2: return -1;
    default: return 0;
  }
}

// Re(w^k) for w = exp(2 pi i / 3).
Rational re_w_pow(i128 k) { return ((k % 3) + 3) % 3 == 0 ? Rational(1) : Rational(-1, 2); }

std::uint64_t abs_u(std::int64_t v) { return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v); }

std::vector<std::uint64_t> primes_of(std::int64_t n) { return n == 0 ? std::vector<std::uint64_t>{} : prime_divisors(n); }

std::int64_t pos_mod(std::int64_t r, std::int64_t m) { return static_cast<std::int64_t>(mod_floor(r, static_cast<std::uint64_t>(m))); }

}  // namespace

// ---------------------------------------------------------------- g data

std::int64_t GDecomposition::reconstruct(unsigned D) const {
  i128 g = static_cast<i128>(g1);
  for (unsigned i = 0; i < lambda; ++i) g *= 2;
  for (unsigned i = 0; i < mu; ++i) g *= D;
  return static_cast<std::int64_t>(delta ? -g : g);
}

GDecomposition decompose_integer(unsigned D, std::int64_t g) {
  if (g == 0) throw std::invalid_argument("decompose_integer: g must be nonzero");
  GDecomposition out;
  out.delta = g < 0 ? 1 : 0;
  std::uint64_t rest = abs_u(g);
  while (rest % 2 == 0) {
    rest /= 2;
    ++out.lambda;
  }
  if (D >= 3) {
    while (rest % D == 0) {
      rest /= D;
      ++out.mu;
    }
  }
  out.g1 = rest;
  return out;
}

GDecomposition decompose_g(const CurveSpec& curve) {
  const auto& a = curve.a;
  if (curve.D == 1) {
    if (a[0] != 0 || a[1] != 0 || a[2] != 0 || a[4] != 0 || a[3] == 0) {
      throw NormalizationMismatch(curve.id + " is not of the form y^2 = x^3 - g x");
    }
    return decompose_integer(1, -a[3]);
  }
  if (curve.D == 3) {
    if (a[0] != 0 || a[1] != 0 || a[2] != 0 || a[3] != 0 || a[4] == 0) {
      throw NormalizationMismatch(curve.id + " is not of the form y^2 = x^3 + g");
    }
    return decompose_integer(3, a[4]);
  }
  const auto row = wanxi_table_row(curve.D);
  if (!row) throw NormalizationMismatch("no normal form for D=" + std::to_string(curve.D));
  const auto [A, B] = four_x_cubed_form(curve);
  if (A.is_zero() || B.is_zero()) throw NormalizationMismatch(curve.id + " has a vanishing coefficient");
  // a = a0 g^2 and b = b0 g^3 force g = (b / b0) / (a / a0).
  const Rational g = (B / row->second) / (A / row->first);
  if (!g.is_integer() || A != row->first * g * g || B != row->second * g * g * g) {
    throw NormalizationMismatch(curve.id + " does not match the D=" + std::to_string(curve.D) + " table for any integer g");
  }
  return decompose_integer(curve.D, static_cast<std::int64_t>(g.num()));
}

const CurveSpec& wanxi_representative(const CurveSpec& curve) {
  if (curve.wanxi_g != 0) return curve;
  for (const CurveSpec* m : class_members(curve)) {
    if (m->wanxi_g != 0) return *m;
  }
  throw NormalizationMismatch("isogeny class " + curve.isogeny_class + " has no normal-form member");
}

// ---------------------------------------------------------------- closed formulas

Rational omega_factor(unsigned D, std::uint64_t g1, std::int64_t r, unsigned j) {
  if (g1 == 0) throw std::invalid_argument("omega_factor: g1 must be positive");
  Rational out(1);
  for (const auto& pp : factorize(g1)) {
    if (r % static_cast<std::int64_t>(pp.p) == 0) continue;
    if (pp.e % j == 0) continue;
    const std::int64_t leg = kronecker(-static_cast<std::int64_t>(D), static_cast<std::int64_t>(pp.p));
    out *= Rational(-1, static_cast<i128>(pp.p) - 1 - leg);
  }
  return out;
}

Rational kappa_d1(const GDecomposition& g, std::int64_t r) {
  if (r % 2 != 0) throw std::invalid_argument("kappa_d1: r must be even");
  const Rational O2 = omega_factor(1, g.g1, r, 2);
  const Rational O4 = omega_factor(1, g.g1, r, 4);
  const i128 g1 = g.g1;
  if (r % 4 == 0) {
    const i128 t = r / 4;
    return Rational(1) - neg1pow(g.lambda * t) * O2 +
           Rational(neg1pow(t * (g.delta + (g1 - 1) / 2)) * (1 - neg1pow(t)) * re_i_pow(1 + g.lambda * t)) * O4;
  }
  if (g.lambda % 2 == 0) {
    const i128 sign = neg1pow((static_cast<i128>(r) - 2) / 4 + (g1 * g1 - 1) / 8);
    return Rational(1) + O2 + Rational(static_cast<std::int64_t>(sign * (1 - neg1pow(g.delta + (g.lambda + g1 - 1) / 2)))) * O4;
  }
  return Rational(1);
}

Rational zeta1(const GDecomposition& g, std::int64_t r) {
  const i128 e = (static_cast<i128>(g.g1) * g.g1 - 1) / 3;
  const std::int64_t m6 = pos_mod(r, 6);
  if (m6 == 2 || m6 == 4) return Rational(1) + 2 * re_w_pow(g.mu) * re_w_pow(g.lambda + e);
  if (m6 == 1 || m6 == 5) {
    return re_w_pow(1 + e) + re_w_pow(g.mu) * (re_w_pow(2 - static_cast<i128>(g.lambda) + e) + re_w_pow(2 + g.lambda));
  }
  throw std::invalid_argument("zeta1: 3 divides r");
}

int zeta2(const GDecomposition& g, std::int64_t r) {
  const i128 h = (static_cast<i128>(g.g1) - 1) / 2;
  const std::int64_t m24 = pos_mod(r, 24);
  const std::int64_t m12 = pos_mod(r, 12);
  const std::int64_t m6 = pos_mod(r, 6);
  if (m6 == 0 || m6 == 3) throw std::invalid_argument("zeta2: 3 divides r");
  // Sign + for r = +k, - for r = -k; cases in the order mod 24, mod 12, mod 6.
  if (m24 == 8 || m24 == 16) return (m24 == 8 ? 1 : -1) * neg1pow(g.delta + g.lambda + g.mu + h);
  if (m24 == 20 || m24 == 4) return (m24 == 20 ? 1 : -1) * neg1pow(g.delta + g.mu + h);
  if (m12 == 2 || m12 == 10) return (m12 == 2 ? 1 : -1) * (1 + neg1pow(g.lambda)) / 2;
  const int s = m6 == 5 ? 1 : -1;
  return s * (1 + neg1pow(g.lambda)) * (1 + neg1pow(g.delta + g.mu + h)) / 4;
}

Rational kappa_d3(const GDecomposition& g, std::int64_t r) {
  const Rational O2 = omega_factor(3, g.g1, r, 2);
  const Rational O6 = omega_factor(3, g.g1, r, 6);
  const Rational z1 = zeta1(g, r);
  const int z2 = zeta2(g, r);
  const int jac = kronecker(3, static_cast<std::int64_t>(g.g1));
  return Rational(1) + Rational(2, 3) * z1 * O2 + Rational(z2 * jac) * (O2 + Rational(2, 3) * z1 * O6);
}

int xi(unsigned D, std::int64_t r) {
  const bool even = r % 2 == 0;
  const auto coprime = [](std::int64_t a, std::int64_t b) { return std::gcd(a, b) == 1; };
  const std::int64_t Di = D;
  if (D % 4 == 1 && even && coprime(Di, r)) return 1;
  if (D % 4 == 2 && even && coprime(Di, r / 2)) return 1;
  if (D % 4 == 3 && even && coprime(Di, r)) return 1;
  if (D % 8 == 3 && !even && coprime(Di, r)) return 2;
  return 0;
}

Rational xi_D(const GDecomposition& g, std::int64_t r) {
  const i128 h = (static_cast<i128>(g.g1) - 1) / 2;
  if (r % 2 != 0) return Rational((1 + neg1pow(g.lambda)) * (neg1pow(h) + neg1pow(g.delta + g.mu)), 4);
  if (r % 4 == 0) return Rational(neg1pow(g.delta + g.mu + static_cast<i128>(g.lambda) * (r / 4)));
  return Rational(neg1pow(h) * (1 + neg1pow(g.lambda)), 2);
}

std::int64_t field_discriminant(unsigned D) {
  switch (D) {
    case 1: return -4;
    case 2: return -8;
    case 3: return -3;
    case 7: case 11: case 19: case 43: case 67: case 163: return -static_cast<std::int64_t>(D);
    default: throw std::invalid_argument("no closed formula for D=" + std::to_string(D));
  }
}

WanXiTerms wanxi_terms(unsigned D, const GDecomposition& g, std::int64_t r) {
  if (r == 0) throw std::invalid_argument("r = 0 is excluded for CM curves");
  field_discriminant(D);  // validates D
  switch (D) {
    case 1:
      if (r % 2 != 0) return {Rational(0), 1};
      return {kappa_d1(g, r) / 4, 1};
    case 3:
      if (r % 3 == 0) return {Rational(0), 3};
      return {Rational(r % 2 == 0 ? 1 : 2, 12) * kappa_d3(g, r), 3};
    case 2: {
      if (pos_mod(r, 4) != 2) return {Rational(0), 2};
      const i128 rr = r;
      const i128 e = (rr - 2) * (rr + 10) / 32 + g.delta + g.lambda + (static_cast<i128>(g.g1) - 1) / 2;
      const int jac = kronecker(2, static_cast<std::int64_t>(g.g1));
      const Rational inner = Rational(1) + Rational(neg1pow(e) * jac, 2) * omega_factor(2, g.g1, r, 2);
      // 1/sqrt(2) = sqrt(2)/2.
      return {inner / 2, 2};
    }
    default: {
      if (r % static_cast<std::int64_t>(D) == 0) return {Rational(0), D};
      const std::int64_t Di = D;
      int jac = kronecker(static_cast<std::int64_t>(mod_floor(static_cast<std::int64_t>(g.g1 % D), D)), Di) *
                kronecker(static_cast<std::int64_t>(mod_floor(r, D)), Di);
      const int k2 = kronecker(2, Di);
      for (unsigned i = 0; i <= g.lambda; ++i) jac *= k2;
      const Rational inner = Rational(1) + xi_D(g, r) * Rational(jac) * omega_factor(D, g.g1, r, 2);
      return {Rational(xi(D, r), 2 * static_cast<i128>(euler_phi(D))) * inner, D};
    }
  }
}

// ---------------------------------------------------------------- L-values

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  const auto sqfree = [](std::int64_t n) {
    for (const auto& pp : factorize(abs_u(n))) {
      if (pp.e > 1) return false;
    }
    return true;
  };
  const std::uint64_t m4 = mod_floor(d, 4);
  if (m4 == 1) return sqfree(d);
  if (m4 == 0) {
    const std::int64_t q = d / 4;
    const std::uint64_t q4 = mod_floor(q, 4);
    return (q4 == 2 || q4 == 3) && sqfree(q);
  }
  return false;
}

double l_closed(std::int64_t disc) {
  const double pi = std::numbers::pi;
  switch (disc) {
    case -4: return pi / 4;
    case -3: return pi / (3 * std::sqrt(3.0));
    case -8: return pi / (2 * std::sqrt(2.0));
    case -7: case -11: case -19: case -43: case -67: case -163:
      return pi / std::sqrt(static_cast<double>(-disc));
    default: throw std::invalid_argument("l_closed: unsupported discriminant " + std::to_string(disc));
  }
}

double l_one(std::int64_t disc) {
  if (disc >= 0 || !is_fundamental_discriminant(disc)) {
    throw std::invalid_argument("l_one: needs a negative fundamental discriminant");
  }
  const std::int64_t q = -disc;
  long double s = 0;
  for (std::int64_t a = 1; a < q; ++a) s += static_cast<long double>(kronecker(disc, a)) * a;
  return static_cast<double>(-std::numbers::pi_v<long double> * s / std::pow(static_cast<long double>(q), 1.5L));
}

double l_two(std::int64_t disc) {
  if (disc == 0) throw std::invalid_argument("l_two: discriminant must be nonzero");
  const std::int64_t q = disc < 0 ? -disc : disc;
  long double s = 0;
  for (std::int64_t a = 1; a <= q; ++a) {
    const int c = kronecker(disc, a);
    if (c != 0) s += c * boost::math::trigamma(static_cast<long double>(a) / q);
  }
  return static_cast<double>(s / (static_cast<long double>(q) * q));
}

// ---------------------------------------------------------------- Euler products

namespace {

long double lt_factor(int c, std::uint64_t p) {
  const long double pl = static_cast<long double>(p);
  return 1.0L - c / ((pl - 1) * (pl - c));
}
long double hl_factor(int c, std::uint64_t p) { return 1.0L - c / (static_cast<long double>(p) - 1); }

// Products over odd primes <= bound, shared by every exclusion set.
struct OddProducts {
  long double lt_direct = 1;  // prod LT(p)
  long double lt_reduced = 1; // prod LT(p) / (1 - chi(p)/p^2)
  long double hl_direct = 1;  // prod HL(p)
};

const OddProducts& odd_products(std::int64_t disc, std::uint64_t bound) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, std::uint64_t>, OddProducts> cache;
  std::lock_guard lock(mu);
  const auto key = std::make_pair(disc, bound);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  OddProducts out;
  const auto table = shared_sieve(bound);
  for (std::uint32_t p : table->primes()) {
    if (p > bound) break;
    if (p == 2) continue;
    const int c = kronecker(disc, p);
    if (c == 0) continue;
    const long double lt = lt_factor(c, p);
    const long double pl = p;
    out.lt_direct *= lt;
    out.lt_reduced *= lt / (1.0L - c / (pl * pl));
    out.hl_direct *= hl_factor(c, p);
  }
  return cache.emplace(key, out).first->second;
}

double l_one_for(std::int64_t disc) {
  try {
    return l_closed(disc);
  } catch (const std::invalid_argument&) {
    return l_one(disc);
  }
}

}  // namespace

ConstantResult euler_product(DirichletChar chi, std::span<const std::uint64_t> exclude, ProductShape shape,
                             std::uint64_t bound, Method mode) {
  if (bound < kMinProductBound) throw std::invalid_argument("euler_product: bound must be at least 1000");
  if (mode == Method::closed_form) throw std::invalid_argument("euler_product: closed_form is not a product mode");
  const std::set<std::uint64_t> S(exclude.begin(), exclude.end());
  const bool keep2 = !S.contains(2);
  const int c2 = chi(2);
  const OddProducts& odd = odd_products(chi.disc, bound);
  const long double B = static_cast<long double>(bound);

  ConstantResult res;
  res.method = mode;
  res.truncation = bound;

  if (mode == Method::direct) {
    long double v = shape == ProductShape::lang_trotter ? odd.lt_direct : odd.hl_direct;
    for (std::uint64_t p : S) {
      if (p == 2 || p > bound) continue;
      const int c = chi(p);
      if (c != 0) v /= shape == ProductShape::lang_trotter ? lt_factor(c, p) : hl_factor(c, p);
    }
    if (keep2) v *= shape == ProductShape::lang_trotter ? lt_factor(c2, 2) : hl_factor(c2, 2);
    res.value = static_cast<double>(v);
    // LT tail ~ sum_{p > B} p^-2; HL partial products oscillate at scale B^-1/2.
    res.est_error = static_cast<double>(std::fabs(v) * (shape == ProductShape::lang_trotter ? 1.0L / (B * std::log(B))
                                                                                              : 1.0L / std::sqrt(B)));
    return res;
  }

  if (!is_fundamental_discriminant(chi.disc) || chi.disc > 0) {
    // No L-value available: fall back to the truncated product.
    auto direct = euler_product(chi, exclude, shape, bound, Method::direct);
    return direct;
  }

  // prod_{p odd} LT(p) = prod_{p odd}(1 - chi/p^2) * reduced = reduced / (L(2) (1 - chi(2)/4)).
  long double lt_odd = odd.lt_reduced / (static_cast<long double>(l_two(chi.disc)) * (1.0L - c2 / 4.0L));
  for (std::uint64_t p : S) {
    if (p == 2) continue;
    const int c = chi(p);
    if (c != 0) lt_odd /= lt_factor(c, p);
  }
  long double v;
  if (shape == ProductShape::lang_trotter) {
    v = lt_odd;
    if (keep2) v *= lt_factor(c2, 2);
  } else {
    // HL(p) = (1 - chi/p) LT(p); prod_{p odd}(1 - chi/p) = 1 / (L(1) (1 - chi(2)/2)).
    v = lt_odd / (static_cast<long double>(l_one_for(chi.disc)) * (1.0L - c2 / 2.0L));
    for (std::uint64_t p : S) {
      if (p == 2) continue;
      const int c = chi(p);
      if (c != 0) v /= 1.0L - c / static_cast<long double>(p);
    }
    if (keep2) v *= hl_factor(c2, 2);
  }
  res.value = static_cast<double>(v);
  // Remaining factors are 1 + O(p^-3): tail below sum_{n > B} 2 n^-3 = B^-2.
  res.est_error = static_cast<double>(std::fabs(v) / (B * B));
  return res;
}

// ---------------------------------------------------------------- the constants

ConstantResult omega_bar_formula(unsigned D, const GDecomposition& g, std::int64_t r, std::uint64_t bound, Method mode) {
  const WanXiTerms t = wanxi_terms(D, g, r);
  if (t.coefficient.is_zero()) return {0.0, mode, bound, 0.0};
  std::vector<std::uint64_t> S = primes_of(r);
  S.push_back(2);
  const ConstantResult prod = euler_product({field_discriminant(D)}, S, ProductShape::hardy_littlewood, bound, mode);
  const double front = t.coefficient.to_double() * std::sqrt(static_cast<double>(t.radicand));
  return {front * prod.value, prod.method, bound, std::fabs(front) * prod.est_error};
}

ConstantResult omega_bar(const CurveSpec& curve, std::int64_t r, std::uint64_t bound, Method mode) {
  if (r == 0) throw std::invalid_argument("omega_bar: r = 0 is excluded for CM curves");
  const CurveSpec& rep = wanxi_representative(curve);
  return omega_bar_formula(rep.D, decompose_g(rep), r, bound, mode);
}

Rational lt_finite_factor(const CurveSpec& curve, std::int64_t r) {
  Rational out(1);
  for (std::uint64_t l : primes_of(r)) {
    if (curve.m_E % l == 0) continue;
    const int c = kronecker(curve.disc_K, static_cast<std::int64_t>(l));
    out *= Rational(static_cast<i128>(l), static_cast<i128>(l) - c);
  }
  return out;
}

ConstantResult lt_constant(const CurveSpec& curve, std::int64_t r, std::uint64_t bound, Method mode) {
  if (r == 0) throw std::invalid_argument("lt_constant: r = 0 is excluded for CM curves");
  const Rational k = kappa(curve, r);
  if (k.is_zero()) return {0.0, mode, bound, 0.0};
  const Rational finite = lt_finite_factor(curve, r);
  std::vector<std::uint64_t> S = primes_of(r);
  for (std::uint64_t l : prime_divisors(curve.m_E)) S.push_back(l);
  const ConstantResult prod = euler_product({curve.disc_K}, S, ProductShape::lang_trotter, bound, mode);
  const double front = static_cast<double>(curve.m_E) / (2 * std::numbers::pi) * (k * finite).to_double();
  return {front * prod.value, prod.method, bound, front * prod.est_error};
}

std::vector<EqualityRow> verify_equality(const CurveSpec& curve, std::span<const std::int64_t> rs, double tol,
                                         std::uint64_t bound, Method mode) {
  if (!(tol > 0)) throw std::invalid_argument("verify_equality: tolerance must be positive");
  std::vector<EqualityRow> rows;
  rows.reserve(rs.size());
  for (std::int64_t r : rs) {
    EqualityRow row;
    row.curve = curve.id;
    row.r = r;
    row.omega_bar = omega_bar(curve, r, bound, mode);
    row.C = lt_constant(curve, r, bound, mode);
    row.diff = std::fabs(row.C.value - row.omega_bar.value);
    row.rel_diff = row.diff / std::max(std::fabs(row.omega_bar.value), 1e-12);
    row.zero_agree = (row.omega_bar.value == 0.0) == (row.C.value == 0.0);
    const bool both_small = std::fabs(row.omega_bar.value) <= tol && std::fabs(row.C.value) <= tol;
    row.pass = both_small || row.rel_diff <= tol;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ltcm
