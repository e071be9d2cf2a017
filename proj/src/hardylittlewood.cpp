#include "ltcm/hardylittlewood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ltcm/arith.hpp"

namespace ltcm {

namespace {

std::uint64_t abs_u(std::int64_t v) { return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v); }

// disc = d0 * s^2 with d0 a fundamental discriminant (or 1 for square disc).
std::pair<std::int64_t, std::uint64_t> fundamental_split(std::int64_t disc) {
  std::int64_t core = disc < 0 ? -1 : 1;
  std::uint64_t s = 1;
  for (const auto& pp : factorize(abs_u(disc))) {
    if (pp.e % 2 == 1) core *= static_cast<std::int64_t>(pp.p);
    for (unsigned i = 0; i < pp.e / 2; ++i) s *= pp.p;
  }
  if (mod_floor(core, 4) != 1) {
    // 4 | s^2 must hold for a discriminant; move it into d0.
    core *= 4;
    s /= 2;
  }
  return {core, s};
}

// Smallest m with m >= -b / (2a), i.e. past the vertex.
std::int64_t vertex_ceil(const QuadPoly& q) {
  const std::int64_t num = -q.b();
  const std::int64_t den = 2 * q.a();
  return num >= 0 ? (num + den - 1) / den : -((-num) / den);
}

template <class F>
void for_each_value(const QuadPoly& poly, std::uint64_t x, const PolyCountOptions& opt, F&& f) {
  if (x > opt.ceiling) throw std::invalid_argument("x exceeds the counting ceiling");
  const std::int64_t past = vertex_ceil(poly);
  for (std::int64_t m = opt.m_start;; ++m) {
    const i128 v = poly(m);
    if (v > static_cast<i128>(x)) {
      if (m >= past) break;
      continue;
    }
    if (v > 0) f(m, static_cast<std::uint64_t>(v));
  }
}

}  // namespace

QuadPoly::QuadPoly(std::int64_t a, std::int64_t b, std::int64_t c) : a_(a), b_(b), c_(c) {
  if (a <= 0) throw std::invalid_argument("QuadPoly: a must be positive");
  const std::int64_t d = discriminant();
  if (d >= 0 && is_square(static_cast<std::uint64_t>(d))) throw std::invalid_argument("QuadPoly: discriminant is a square");
  if (std::gcd(std::gcd(a, b), c) != 1) throw std::invalid_argument("QuadPoly: gcd(a, b, c) != 1");
  if ((a + b) % 2 == 0 && c % 2 == 0) throw std::invalid_argument("QuadPoly: a + b and c both even");
}

std::string QuadPoly::to_string() const {
  return std::to_string(a_) + "m^2 + " + std::to_string(b_) + "m + " + std::to_string(c_);
}

PolyBridge poly_for(const CurveSpec& curve, std::int64_t r) {
  const std::int64_t D = curve.D;
  if (D % 4 == 1 || D % 4 == 2) {
    if (r % 2 != 0) throw ParityError("Case 1 needs an even trace, got r = " + std::to_string(r));
    const std::int64_t h = r / 2;
    return {QuadPoly(D, 0, h * h), 1, false, "n"};
  }
  return {QuadPoly(D, -D * r, ((D + 1) / 4) * r * r), 2, false, "m"};
}

Rational hl_front_rational(const QuadPoly& poly) {
  std::uint64_t d = std::gcd(abs_u(poly.a()), abs_u(poly.b()));
  while (d % 2 == 0) d /= 2;
  const std::int64_t two = (poly.a() + poly.b()) % 2 == 0 ? 2 : 1;
  return Rational(static_cast<i128>(two) * d, static_cast<i128>(euler_phi(d)));
}

ConstantResult hl_constant(const QuadPoly& poly, std::uint64_t bound, Method mode) {
  const auto [d0, s] = fundamental_split(poly.discriminant());
  std::vector<std::uint64_t> S{2};
  for (std::uint64_t p : prime_divisors(poly.a())) S.push_back(p);
  if (s > 1) {
    for (std::uint64_t p : prime_divisors(static_cast<std::int64_t>(s))) S.push_back(p);
  }
  const ConstantResult prod = euler_product({d0}, S, ProductShape::hardy_littlewood, bound, mode);
  const double front = hl_front_rational(poly).to_double() / std::sqrt(static_cast<double>(poly.a()));
  return {front * prod.value, prod.method, bound, front * prod.est_error};
}

CountResult count_poly_primes(const QuadPoly& poly, std::uint64_t x, const PolyCountOptions& options) {
  std::vector<std::uint64_t> hits;
  for_each_value(poly, x, options, [&](std::int64_t, std::uint64_t v) {
    if (is_prime(v)) hits.push_back(v);
  });
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return {x, 0, hits.size(), {}};
}

void write_poly_csv(std::ostream& out, const QuadPoly& poly, std::uint64_t x, const PolyCountOptions& options) {
  out << "m,value,is_prime\n";
  for_each_value(poly, x, options,
                 [&](std::int64_t m, std::uint64_t v) { out << m << ',' << v << ',' << (is_prime(v) ? 1 : 0) << '\n'; });
}

}  // namespace ltcm
