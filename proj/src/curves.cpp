#include "ltcm/curves.hpp"

#include <algorithm>

#include "ltcm/arith.hpp"

namespace ltcm {

namespace {

CurveSpec make(std::string id, std::array<std::int64_t, 5> a, unsigned D, std::int64_t disc_K, unsigned f,
               unsigned m_E, std::vector<std::uint64_t> bad, std::string cls, std::int64_t g,
               std::string note = {}) {
  return {std::move(id), a, D, disc_K, f, m_E, std::move(bad), std::move(cls), g, std::move(note)};
}

std::vector<CurveSpec> build_registry() {
  std::vector<CurveSpec> r;
  // j = 1728 family and its Z[2i] partners.
  r.push_back(make("E1", {0, 0, 0, 4, 0}, 1, -4, 1, 4, {2}, "32a", -4));
  r.push_back(make("E1b", {0, 0, 0, -1, 0}, 1, -4, 1, 4, {2}, "32a", 1));
  r.push_back(make("E1c", {0, 0, 0, -11, -14}, 1, -4, 2, 4, {2}, "32a", 0));
  r.push_back(make("E1s", {0, 0, 0, -11, 14}, 1, -4, 2, 4, {2}, "32a", 0));
  // j = 0 family and its Z[sqrt(-3)] partners.
  r.push_back(make("E2", {0, 0, 0, 0, 1}, 3, -3, 1, 12, {2, 3}, "36a", 1));
  r.push_back(make("E2b", {0, 0, 0, 0, -27}, 3, -3, 1, 12, {2, 3}, "36a", -27));
  r.push_back(make("E2s", {0, 0, 0, -15, 22}, 3, -3, 2, 12, {2, 3}, "36a", 0));
  r.push_back(make("E2c", {0, 0, 0, -135, -594}, 3, -3, 2, 12, {2, 3}, "36a", 0));
  // Class number one fields; each partner is the -D twist.
  r.push_back(make("E3", {1, -1, 0, -2, -1}, 7, -7, 1, 28, {7}, "49a", 1));
  r.push_back(make("E3p", {1, -1, 0, -107, 552}, 7, -7, 1, 28, {7}, "49a", -7));
  r.push_back(make("E4", {0, -1, 1, -7, 10}, 11, -11, 1, 44, {11}, "121b", 1));
  r.push_back(make("E4p", {0, -1, 1, -887, -10143}, 11, -11, 1, 44, {11}, "121b", -11,
                   "data-curated: printed model omits the x monomial; a4 = -887 restored"));
  r.push_back(make("E5", {0, 0, 1, -38, 90}, 19, -19, 1, 76, {19}, "361a", 1));
  r.push_back(make("E5p", {0, 0, 1, -13718, -619025}, 19, -19, 1, 76, {19}, "361a", -19));
  r.push_back(make("E6", {0, 0, 1, -860, 9707}, 43, -43, 1, 172, {43}, "1849a", 1));
  r.push_back(make("E6p", {0, 0, 1, -1590140, -771794326}, 43, -43, 1, 172, {43}, "1849a", -43));
  r.push_back(make("E7", {0, 0, 1, -7370, 243528}, 67, -67, 1, 268, {67}, "4489a", 1));
  r.push_back(make("E7p", {0, 0, 1, -33083930, -73244287055}, 67, -67, 1, 268, {67}, "4489a", -67,
                   "data-curated: printed a4 = -3308930 is not on this j-line; the -67 twist of E7 has a4 = -33083930"));
  r.push_back(make("E8", {0, 0, 1, -2174420, 1234136692}, 163, -163, 1, 652, {163}, "26569a", 1));
  r.push_back(make("E8p", {0, 0, 1, -57772164980, -5344733777551611}, 163, -163, 1, 652, {163}, "26569a", -163));
  return r;
}

i128 pow_i(i128 base, unsigned e) {
  i128 r = 1;
  while (e-- > 0) r *= base;
  return r;
}

}  // namespace

const std::vector<CurveSpec>& registry() {
  static const std::vector<CurveSpec> curves = build_registry();
  return curves;
}

const CurveSpec& lookup(std::string_view id) {
  for (const auto& c : registry()) {
    if (c.id == id) return c;
  }
  throw UnknownCurve(std::string(id));
}

std::vector<const CurveSpec*> class_members(const CurveSpec& curve) {
  std::vector<const CurveSpec*> out;
  for (const auto& c : registry()) {
    if (c.isogeny_class == curve.isogeny_class) out.push_back(&c);
  }
  return out;
}

Rational Invariants::j() const {
  if (disc == 0) throw SingularCurve("j-invariant of a singular curve");
  return Rational(c4 * c4 * c4, disc);
}

Invariants invariants(const CurveSpec& curve) {
  const i128 a1 = curve.a[0], a2 = curve.a[1], a3 = curve.a[2], a4 = curve.a[3], a6 = curve.a[4];
  Invariants v{};
  v.b2 = a1 * a1 + 4 * a2;
  v.b4 = 2 * a4 + a1 * a3;
  v.b6 = a3 * a3 + 4 * a6;
  v.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  v.c4 = v.b2 * v.b2 - 24 * v.b4;
  v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
  v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 + 9 * v.b2 * v.b4 * v.b6;
  return v;
}

ShortForm to_short(const CurveSpec& curve) {
  ShortForm s{};
  const auto& a = curve.a;
  if (a[0] == 0 && a[1] == 0 && a[2] == 0) {
    s.A = Rational(a[3]);
    s.B = Rational(a[4]);
  } else {
    const Invariants v = invariants(curve);
    s.A = Rational(-v.c4, 48);
    s.B = Rational(-v.c6, 864);
  }
  if (4 * s.A * s.A * s.A + 27 * s.B * s.B == Rational(0)) throw SingularCurve("singular short form for " + curve.id);

  // Smallest u | 6 clearing both denominators.
  for (std::uint64_t u : {1, 2, 3, 6}) {
    const Rational Au = s.A * Rational::from_i128(pow_i(u, 4));
    const Rational Bu = s.B * Rational::from_i128(pow_i(u, 6));
    if (Au.is_integer() && Bu.is_integer()) {
      s.u = u;
      s.A_int = static_cast<std::int64_t>(Au.num());
      s.B_int = static_cast<std::int64_t>(Bu.num());
      return s;
    }
  }
  throw SingularCurve("short form of " + curve.id + " has denominators outside 2 and 3");
}

std::pair<Rational, Rational> four_x_cubed_form(const CurveSpec& curve) {
  const ShortForm s = to_short(curve);
  return {4 * s.A, 4 * s.B};
}

std::optional<std::pair<Rational, Rational>> wanxi_table_row(unsigned D) {
  switch (D) {
    case 2: return std::pair{Rational(-40, 3), Rational(-224, 27)};
    case 7: return std::pair{Rational(-35, 4), Rational(-49, 8)};
    case 11: return std::pair{Rational(-88, 3), Rational(847, 27)};
    case 19: return std::pair{Rational(-152), Rational(361)};
    case 43: return std::pair{Rational(-3440), Rational(38829)};
    case 67: return std::pair{Rational(-29480), Rational(974113)};
    // The sign of a is forced negative by j < 0.
    case 163: return std::pair{Rational(-8697680), Rational(185801LL * 163 * 163)};
    default: return std::nullopt;
  }
}

bool verify_wanxi_form(const CurveSpec& curve) {
  if (curve.D < 7) throw std::invalid_argument("verify_wanxi_form applies to D >= 7, got D=" + std::to_string(curve.D));
  const auto row = wanxi_table_row(curve.D);
  if (!row || curve.wanxi_g == 0) return false;
  const Rational g(curve.wanxi_g);
  const auto [a, b] = four_x_cubed_form(curve);
  return a == row->first * g * g && b == row->second * g * g * g;
}

std::optional<CurveModP> reduce(const CurveSpec& curve, std::uint64_t p) {
  if (p <= 3) return std::nullopt;
  if (std::find(curve.bad_primes.begin(), curve.bad_primes.end(), p) != curve.bad_primes.end()) return std::nullopt;
  const ShortForm s = to_short(curve);
  const std::uint64_t A = mod_floor(s.A_int, p);
  const std::uint64_t B = mod_floor(s.B_int, p);
  const std::uint64_t disc = (mulmod(4, mulmod(A, mulmod(A, A, p), p), p) + mulmod(27, mulmod(B, B, p), p)) % p;
  if (disc == 0) return std::nullopt;
  return CurveModP{p, A, B};
}

}  // namespace ltcm
