#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ltcm/arith.hpp"
#include "ltcm/constants.hpp"
#include "ltcm/galois.hpp"

using namespace ltcm;

namespace {

constexpr double kPi = std::numbers::pi;

// Straight truncated product over primes found by trial division; shares no
// code with the library's sieve or caches.
long double plain_product(std::int64_t disc, std::uint64_t bound, bool lang_trotter, std::uint64_t skip_mod) {
  long double v = 1;
  for (std::uint64_t p = 2; p <= bound; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        prime = false;
        break;
      }
    }
    if (!prime || (skip_mod && skip_mod % p == 0)) continue;
    const int c = kronecker(disc, static_cast<std::int64_t>(p));
    const long double pl = static_cast<long double>(p);
    v *= lang_trotter ? 1.0L - c / ((pl - 1) * (pl - c)) : 1.0L - c / (pl - 1);
  }
  return v;
}

// prod_{p not in skip} (1 - chi(p)/(p - 1)) without relying on the library:
// 1/L(1, chi) from a long partial sum, times the fast converging ratios
// (1 - chi/(p - 1)) / (1 - chi/p), with the skipped primes divided back out.
long double accelerated_product(std::int64_t disc, std::initializer_list<std::uint64_t> skip) {
  long double L = 0;
  for (std::int64_t n = 1; n <= 10'000'000; ++n) L += kronecker(disc, n) / static_cast<long double>(n);
  long double v = 1 / L;
  for (std::uint64_t p = 2; p <= 200'000; ++p) {
    if (!is_prime(p)) continue;
    const int c = kronecker(disc, static_cast<std::int64_t>(p));
    const long double pl = static_cast<long double>(p);
    const bool skipped = std::find(skip.begin(), skip.end(), p) != skip.end();
    v *= skipped ? 1 / (1.0L - c / pl) : (1.0L - c / (pl - 1)) / (1.0L - c / pl);
  }
  return v;
}

}  // namespace

TEST(Decompose, Examples) {
  EXPECT_EQ(decompose_g(lookup("E1")), (GDecomposition{1, 2, 0, 1}));
  EXPECT_EQ(decompose_g(lookup("E2")), (GDecomposition{0, 0, 0, 1}));
  EXPECT_EQ(decompose_g(lookup("E5")), (GDecomposition{0, 0, 0, 1}));
  EXPECT_EQ(decompose_g(lookup("E2b")), (GDecomposition{1, 0, 3, 1}));
  EXPECT_EQ(decompose_g(lookup("E8p")), (GDecomposition{1, 0, 1, 1}));
  EXPECT_THROW(decompose_g(lookup("E1s")), NormalizationMismatch);
  EXPECT_THROW(decompose_g(lookup("E2c")), NormalizationMismatch);
}

TEST(Decompose, ReconstructsG) {
  for (std::int64_t g : {-4LL, 1LL, -27LL, 90LL, -1225LL, 5LL * 49 * 8}) {
    for (unsigned D : {1u, 3u, 7u}) EXPECT_EQ(decompose_integer(D, g).reconstruct(D), g) << g << " D=" << D;
  }
  EXPECT_EQ(decompose_integer(7, -5 * 49 * 8), (GDecomposition{1, 3, 2, 5}));
  EXPECT_THROW(decompose_integer(1, 0), std::invalid_argument);
}

TEST(OmegaFactor, Examples) {
  EXPECT_EQ(omega_factor(1, 1, 7, 2), Rational(1));
  EXPECT_EQ(omega_factor(1, 5, 3, 2), Rational(-1, 3));
  EXPECT_EQ(omega_factor(1, 5, 5, 2), Rational(1));
  EXPECT_EQ(omega_factor(1, 25, 3, 2), Rational(1));     // 2 | nu
  EXPECT_EQ(omega_factor(1, 25, 3, 4), Rational(-1, 3));  // 4 does not divide 2
  EXPECT_EQ(omega_factor(3, 7 * 5, 1, 2), Rational(-1, 5) * Rational(-1, 5));
}

TEST(ClosedForms, KappaD1ReproducesTheE1Constant) {
  const GDecomposition e1{1, 2, 0, 1};
  EXPECT_EQ(kappa_d1(e1, 2), Rational(2));
  EXPECT_EQ(kappa_d1(e1, -2), Rational(2));
  EXPECT_EQ(kappa_d1(e1, 6), Rational(2));
  EXPECT_EQ(kappa_d1(e1, 4), Rational(0));
  EXPECT_EQ(kappa_d1(e1, 8), Rational(0));
  EXPECT_THROW(kappa_d1(e1, 3), std::invalid_argument);
}

TEST(ClosedForms, D3SubtermsForE2) {
  const GDecomposition e2{0, 0, 0, 1};
  EXPECT_EQ(zeta1(e2, 2), Rational(3));
  EXPECT_EQ(zeta2(e2, 2), 1);
  EXPECT_EQ(kappa_d3(e2, 2), Rational(6));
  EXPECT_EQ(kappa_d3(e2, 8), Rational(6));
  EXPECT_EQ(kappa_d3(e2, 4), Rational(0));
  EXPECT_EQ(kappa_d3(e2, 1), Rational(0));
  EXPECT_EQ(zeta1(e2, 1), Rational(-3, 2));
  EXPECT_THROW(zeta1(e2, 3), std::invalid_argument);
}

TEST(ClosedForms, XiTables) {
  EXPECT_EQ(xi(11, 7), 2);
  EXPECT_EQ(xi(7, 3), 0);
  EXPECT_EQ(xi(7, 2), 1);
  EXPECT_EQ(xi(11, 22), 0);
  EXPECT_EQ(xi(19, 19), 0);
  const GDecomposition one{};
  for (std::int64_t r : {1, 2, 3, 4, 6, 8, 12}) EXPECT_EQ(xi_D(one, r), Rational(1)) << r;
}

TEST(ClosedForms, WanXiTermsForE4AtSeven) {
  const auto t = wanxi_terms(11, GDecomposition{}, 7);
  EXPECT_EQ(t.radicand, 11u);
  // xi / (2 phi(11)) * (1 + 1) = 2/20 * 2.
  EXPECT_EQ(t.coefficient, Rational(1, 5));
  EXPECT_THROW(wanxi_terms(11, GDecomposition{}, 0), std::invalid_argument);
  EXPECT_THROW(wanxi_terms(5, GDecomposition{}, 2), std::invalid_argument);
}

TEST(ClosedForms, D2ResidueClasses) {
  const GDecomposition one{};
  EXPECT_TRUE(wanxi_terms(2, one, 4).coefficient.is_zero());
  EXPECT_TRUE(wanxi_terms(2, one, 3).coefficient.is_zero());
  EXPECT_FALSE(wanxi_terms(2, one, 2).coefficient.is_zero());
  EXPECT_EQ(field_discriminant(2), -8);
}

TEST(LValues, ClosedForms) {
  EXPECT_DOUBLE_EQ(l_closed(-4), kPi / 4);
  EXPECT_DOUBLE_EQ(l_closed(-3), kPi / (3 * std::sqrt(3.0)));
  EXPECT_DOUBLE_EQ(l_closed(-11), kPi / std::sqrt(11.0));
  EXPECT_THROW(l_closed(-5), std::invalid_argument);
  for (std::int64_t d : {-3, -4, -7, -8, -11, -19, -43, -67, -163}) EXPECT_NEAR(l_one(d), l_closed(d), 1e-13) << d;
}

TEST(LValues, LTwoAgainstDirichletSeries) {
  // Catalan's constant for chi_4.
  EXPECT_NEAR(l_two(-4), 0.915965594177219015, 1e-14);
  for (std::int64_t d : {-3, -7, -163}) {
    long double s = 0;
    for (std::int64_t n = 1; n <= 2'000'000; ++n) s += kronecker(d, n) / (static_cast<long double>(n) * n);
    EXPECT_NEAR(l_two(d), static_cast<double>(s), 1e-9) << d;
  }
}

TEST(LValues, FundamentalDiscriminants) {
  EXPECT_TRUE(is_fundamental_discriminant(-4));
  EXPECT_TRUE(is_fundamental_discriminant(-8));
  EXPECT_TRUE(is_fundamental_discriminant(-163));
  EXPECT_FALSE(is_fundamental_discriminant(-12));
  EXPECT_FALSE(is_fundamental_discriminant(-16));
  EXPECT_FALSE(is_fundamental_discriminant(1));
}

TEST(EulerProduct, DirectMatchesPlainLoop) {
  for (std::int64_t d : {-4, -3, -11}) {
    const auto hl = euler_product({d}, {}, ProductShape::hardy_littlewood, 20000, Method::direct);
    EXPECT_NEAR(hl.value, static_cast<double>(plain_product(d, 20000, false, 0)), 1e-13) << d;
    const std::uint64_t S[] = {2, 5};
    const auto lt = euler_product({d}, S, ProductShape::lang_trotter, 20000, Method::direct);
    EXPECT_NEAR(lt.value, static_cast<double>(plain_product(d, 20000, true, 10)), 1e-13) << d;
  }
}

TEST(EulerProduct, AcceleratedAgreesWithDirect) {
  const auto acc = euler_product({-4}, {}, ProductShape::hardy_littlewood, 1'000'000, Method::accelerated);
  const auto dir = euler_product({-4}, {}, ProductShape::hardy_littlewood, 1'000'000, Method::direct);
  EXPECT_LE(std::fabs(acc.value - dir.value), 1e-5);
  EXPECT_NEAR(acc.value, 1.3728134628182460, 1e-12);  // n^2 + 1 constant
  for (std::int64_t d : {-4, -3, -7, -11, -19, -43, -67, -163}) {
    const auto a = euler_product({d}, {}, ProductShape::lang_trotter, 1'000'000, Method::accelerated);
    const auto b = euler_product({d}, {}, ProductShape::lang_trotter, 1'000'000, Method::direct);
    EXPECT_LE(std::fabs(a.value - b.value), 1e-8) << d;
    EXPECT_GE(a.est_error, 0.0);
  }
}

TEST(EulerProduct, AccelerationIsStableInTheBound) {
  for (std::int64_t d : {-4, -3, -7, -11, -19, -43, -67, -163}) {
    for (auto shape : {ProductShape::hardy_littlewood, ProductShape::lang_trotter}) {
      const std::uint64_t S[] = {2, 3, 5};
      const auto a5 = euler_product({d}, S, shape, 100'000, Method::accelerated);
      const auto a6 = euler_product({d}, S, shape, 1'000'000, Method::accelerated);
      EXPECT_LE(std::fabs(a5.value - a6.value), 1e-6) << d;
    }
  }
}

TEST(EulerProduct, RamifiedExclusionsAreNeutral) {
  const std::uint64_t S[] = {11};
  const auto with = euler_product({-11}, S, ProductShape::hardy_littlewood, 10'000, Method::direct);
  const auto without = euler_product({-11}, {}, ProductShape::hardy_littlewood, 10'000, Method::direct);
  EXPECT_EQ(with.value, without.value);
}

TEST(EulerProduct, RejectsBadArguments) {
  EXPECT_THROW(euler_product({-4}, {}, ProductShape::lang_trotter, 999, Method::direct), std::invalid_argument);
  EXPECT_THROW(euler_product({-4}, {}, ProductShape::lang_trotter, 10'000, Method::closed_form), std::invalid_argument);
}

TEST(EulerProduct, PartialProductsApproachPiOverFour) {
  // prod_{p <= x} (1 - chi_4(p)/p)^{-1} oscillates; averaging consecutive
  // partial products damps it.
  const auto t = sieve(10'000'000);
  long double partial = 1, sum = 0;
  std::size_t n = 0;
  for (std::uint32_t p : t.primes()) {
    partial /= 1.0L - kronecker(-4, p) / static_cast<long double>(p);
    if (p > 5'000'000) {
      sum += partial;
      ++n;
    }
  }
  EXPECT_NEAR(static_cast<double>(sum / n), l_closed(-4), 1e-4);
}

TEST(Constants, EquationForE1AndE2) {
  // omega_bar(E1, 2) = 1/2 prod_{p > 2}; omega_bar(E2, 2) = sqrt(3)/2 prod_{p > 3}.
  const double p4 = static_cast<double>(accelerated_product(-4, {2}));
  EXPECT_NEAR(omega_bar(lookup("E1"), 2).value, 0.5 * p4, 1e-5);
  const double p3 = static_cast<double>(accelerated_product(-3, {2, 3}));
  EXPECT_NEAR(omega_bar(lookup("E2"), 2).value, std::sqrt(3.0) / 2 * p3, 1e-5);
  EXPECT_EQ(omega_bar(lookup("E1"), 1).value, 0.0);
  EXPECT_THROW(omega_bar(lookup("E1"), 0), std::invalid_argument);
}

TEST(Constants, LangTrotterForE1s) {
  // (2/pi) prod_{p odd} LT(p) at r = 2; zero at r = 4.
  const double lt = static_cast<double>(plain_product(-4, 200'000, true, 2));
  EXPECT_NEAR(lt_constant(lookup("E1s"), 2).value, 2 / kPi * lt, 1e-6);
  EXPECT_EQ(lt_constant(lookup("E1s"), 4).value, 0.0);
  EXPECT_EQ(lt_finite_factor(lookup("E1s"), 10), Rational(5, 4));  // chi_4(5) = 1
  EXPECT_EQ(lt_finite_factor(lookup("E1s"), 14), Rational(7, 8));  // chi_4(7) = -1
}

TEST(Constants, EqualityAcrossClassesOneAndTwo) {
  std::vector<std::int64_t> rs;
  for (std::int64_t r = -50; r <= 50; ++r) {
    if (r != 0) rs.push_back(r);
  }
  for (const char* id : {"E1", "E1s", "E2", "E2s"}) {
    for (const auto& row : verify_equality(lookup(id), rs, 1e-6)) {
      EXPECT_TRUE(row.pass) << id << " r=" << row.r << " " << row.omega_bar.value << " " << row.C.value;
      EXPECT_TRUE(row.zero_agree) << id << " r=" << row.r;
    }
  }
  const std::int64_t three[] = {3};
  const auto z = verify_equality(lookup("E2s"), three, 1e-6);
  EXPECT_EQ(z[0].omega_bar.value, 0.0);
  EXPECT_EQ(z[0].C.value, 0.0);
  EXPECT_TRUE(z[0].pass);
}

TEST(Constants, DirectModeStillAgrees) {
  // Both pipelines truncated at the same bound: differences are truncation
  // artefacts of different products, so the tolerance is loose.
  const std::int64_t rs[] = {2, 7, -8};
  for (const auto& row : verify_equality(lookup("E4"), rs, 1e-3, 1'000'000, Method::direct)) {
    EXPECT_TRUE(row.pass) << row.r << " " << row.rel_diff;
  }
}

TEST(Constants, IsogenyPartnersExactlyEqual) {
  for (const auto& c : registry()) {
    for (const CurveSpec* o : class_members(c)) {
      for (std::int64_t r : {-6, 2, 7, 8}) {
        EXPECT_EQ(omega_bar(c, r).value, omega_bar(*o, r).value) << c.id << " " << o->id;
        EXPECT_EQ(lt_constant(c, r).value, lt_constant(*o, r).value) << c.id << " " << o->id;
      }
    }
  }
}

TEST(Constants, ZeroClassesAgreeOnEveryCurve) {
  for (const auto& c : registry()) {
    for (std::int64_t r = -100; r <= 100; ++r) {
      if (r == 0) continue;
      EXPECT_EQ(omega_bar(c, r).value == 0.0, lt_constant(c, r).value == 0.0) << c.id << " r=" << r;
    }
  }
}

TEST(Constants, ScalingInRForD1) {
  // r and r + 4m with the same odd part give the same constant.
  const auto& e1 = lookup("E1");
  EXPECT_EQ(omega_bar(e1, 2).value, omega_bar(e1, -2).value);
  EXPECT_EQ(omega_bar(e1, 6).value, omega_bar(e1, -6).value);
  // r = 10 adds the finite factor 5/4 and drops the p = 5 Euler factor 15/16.
  EXPECT_NEAR(lt_constant(e1, 10).value / lt_constant(e1, 2).value,
              Rational(5, 4).to_double() / (1 - 1.0 / ((5 - 1) * (5 - 1))), 1e-12);
}
