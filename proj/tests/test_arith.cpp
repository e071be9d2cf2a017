#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ltcm/arith.hpp"

using namespace ltcm;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Legendre symbol by listing the squares mod p.
int legendre_by_squares(std::int64_t a, std::uint64_t p) {
  const std::uint64_t r = mod_floor(a, p);
  if (r == 0) return 0;
  for (std::uint64_t x = 1; x < p; ++x) {
    if (x * x % p == r) return 1;
  }
  return -1;
}

}  // namespace

TEST(Sieve, SmallBounds) {
  const auto t10 = sieve(10);
  EXPECT_EQ(std::vector<std::uint32_t>(t10.primes().begin(), t10.primes().end()),
            (std::vector<std::uint32_t>{2, 3, 5, 7}));
  const auto t2 = sieve(2);
  ASSERT_EQ(t2.size(), 1u);
  EXPECT_EQ(t2.primes()[0], 2u);
}

TEST(Sieve, RejectsOutOfRange) {
  EXPECT_THROW(sieve(1), std::invalid_argument);
  EXPECT_THROW(sieve(kMaxSieveBound + 1), std::invalid_argument);
}

TEST(Sieve, MillionCountsAgainstSimpleSieve) {
  const std::uint64_t n = 1'000'000;
  std::vector<bool> composite(n + 1, false);
  std::size_t count = 0;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    ++count;
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  const auto t = sieve(n);
  EXPECT_EQ(t.size(), count);
  EXPECT_EQ(t.size(), 78498u);
  EXPECT_EQ(t.count_upto(100), 25u);
  EXPECT_TRUE(t.contains(999983));
  EXPECT_FALSE(t.contains(999981));
}

TEST(Sieve, SegmentBoundariesMatchTrialDivision) {
  // Crosses several 2^18-odd segments.
  const auto t = sieve(1'200'000);
  std::set<std::uint32_t> s(t.primes().begin(), t.primes().end());
  for (std::uint64_t n = 520'000; n < 530'000; ++n) EXPECT_EQ(s.contains(n), trial_prime(n)) << n;
  for (std::uint64_t n = 1'048'000; n < 1'049'500; ++n) EXPECT_EQ(s.contains(n), trial_prime(n)) << n;
}

TEST(Primality, MillerRabinAgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) EXPECT_EQ(is_prime(n), trial_prime(n)) << n;
  EXPECT_TRUE(is_prime(2305843009213693951ULL));   // 2^61 - 1
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to bases up to 23
}

TEST(Factorize, RoundTrip) {
  for (std::uint64_t n : {1ULL, 2ULL, 12ULL, 652ULL, 97ULL * 97 * 101, 600851475143ULL}) {
    std::uint64_t prod = 1;
    for (const auto& pp : factorize(n)) {
      EXPECT_TRUE(trial_prime(pp.p));
      for (unsigned i = 0; i < pp.e; ++i) prod *= pp.p;
    }
    EXPECT_EQ(prod, n);
  }
  EXPECT_EQ(prime_divisors(-12), (std::vector<std::uint64_t>{2, 3}));
  EXPECT_THROW(prime_divisors(0), std::invalid_argument);
  EXPECT_EQ(euler_phi(652), 324u);
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker(-1, 5), 1);
  EXPECT_EQ(kronecker(-3, 3), 0);
  EXPECT_EQ(kronecker(-4, 7), -1);
  EXPECT_THROW(kronecker(3, 0), std::invalid_argument);
}

TEST(Kronecker, MatchesSquaresForOddPrimes) {
  for (std::uint64_t p = 3; p < 200; p += 2) {
    if (!trial_prime(p)) continue;
    for (std::int64_t a = -60; a <= 60; ++a) {
      EXPECT_EQ(kronecker(a, static_cast<std::int64_t>(p)), legendre_by_squares(a, p)) << a << "/" << p;
    }
  }
}

TEST(Kronecker, CharacterAtTwoAndNegatives) {
  // (d/2) for d = 1 mod 8 is 1, d = 5 mod 8 is -1, even d gives 0.
  EXPECT_EQ(kronecker(-7, 2), 1);
  EXPECT_EQ(kronecker(-3, 2), -1);
  EXPECT_EQ(kronecker(-4, 2), 0);
  EXPECT_EQ(kronecker(-163, 2), -1);
  // (a/-1) = sign of a.
  EXPECT_EQ(kronecker(-5, -1), -1);
  EXPECT_EQ(kronecker(5, -1), 1);
}

TEST(Kronecker, MultiplicativeInTopEntry) {
  std::mt19937_64 rng(7);
  const auto t = sieve(5000);
  std::uniform_int_distribution<std::int64_t> ad(-1'000'000, 1'000'000);
  std::uniform_int_distribution<std::size_t> pd(1, t.size() - 1);
  for (int i = 0; i < 20000; ++i) {
    const std::int64_t a = ad(rng), b = ad(rng);
    const std::int64_t p = t.primes()[pd(rng)];
    EXPECT_EQ(kronecker(a, p) * kronecker(b, p), kronecker(a * b, p));
  }
}

TEST(SqrtMod, Examples) {
  EXPECT_EQ(sqrt_mod(4, 7), 2u);
  EXPECT_EQ(sqrt_mod(-1, 13), 5u);
  EXPECT_FALSE(sqrt_mod(3, 7).has_value());
}

TEST(SqrtMod, RootsAndNoRootAgreeWithLegendre) {
  const auto t = sieve(3000);
  for (std::uint32_t p : t.primes()) {
    if (p == 2) continue;
    for (std::int64_t a = 1; a < 60; ++a) {
      if (a % p == 0) continue;
      const auto r = sqrt_mod(a, p);
      EXPECT_EQ(r.has_value(), kronecker(a, p) == 1);
      if (r) {
        EXPECT_EQ(mulmod(*r, *r, p), mod_floor(a, p));
        EXPECT_LE(*r, (p - 1) / 2);
      }
    }
  }
}

TEST(SqrtModAll, CompositeModuli) {
  for (std::uint64_t m : {8ULL, 12ULL, 45ULL, 52ULL, 100ULL, 1001ULL}) {
    const auto f = factorize(m);
    for (std::int64_t a = -20; a < 40; ++a) {
      std::vector<std::uint64_t> brute;
      for (std::uint64_t r = 0; r < m; ++r) {
        if (r * r % m == mod_floor(a, m)) brute.push_back(r);
      }
      EXPECT_EQ(sqrt_mod_all(a, m, f), brute) << a << " mod " << m;
    }
  }
}

TEST(Cornacchia, Examples) {
  EXPECT_EQ(cornacchia(1, 13), (std::vector<FormSolution>{{2, 3, 1, 13}, {3, 2, 1, 13}}));
  EXPECT_EQ(cornacchia(1, 2), (std::vector<FormSolution>{{1, 1, 1, 2}}));
  EXPECT_EQ(cornacchia(4, 52), (std::vector<FormSolution>{{4, 3, 4, 52}, {6, 2, 4, 52}}));
  EXPECT_TRUE(cornacchia(3, 2).empty());
  EXPECT_THROW(cornacchia(0, 5), std::invalid_argument);
  EXPECT_THROW(cornacchia(1, 0), std::invalid_argument);
}

TEST(Cornacchia, AgreesWithBruteForce) {
  // Every m <= 1e5 for a spread of d, and a denser grid of small m for all d <= 200.
  const auto brute = [](std::uint64_t d, std::uint64_t m) {
    std::vector<FormSolution> out;
    for (std::uint64_t x = 0; x * x <= m; ++x) {
      std::uint64_t y = 0;
      if ((m - x * x) % d == 0 && is_square((m - x * x) / d, &y)) out.push_back({x, y, d, m});
    }
    return out;
  };
  for (std::uint64_t d : {1ULL, 2ULL, 3ULL, 4ULL, 7ULL, 11ULL, 163ULL, 200ULL}) {
    for (std::uint64_t m = 1; m <= 100'000; ++m) ASSERT_EQ(cornacchia(d, m), brute(d, m)) << d << " " << m;
  }
  for (std::uint64_t d = 1; d <= 200; ++d) {
    for (std::uint64_t m = 1; m <= 3000; ++m) ASSERT_EQ(cornacchia(d, m), brute(d, m)) << d << " " << m;
  }
}

TEST(Cornacchia, LargeInputsStayExact) {
  // 4p with p near 1e9 as used by the trace computation.
  const std::uint64_t p = 999999937;
  for (const auto& s : cornacchia(4, 4 * p)) {
    EXPECT_EQ(static_cast<unsigned __int128>(s.x) * s.x + static_cast<unsigned __int128>(4) * s.y * s.y,
              static_cast<unsigned __int128>(4) * p);
  }
  EXPECT_FALSE(cornacchia(4, 4 * p).empty());
}

TEST(Rational, Arithmetic) {
  const Rational a(1, 6), b(-2, 4);
  EXPECT_EQ(a + b, Rational(-1, 3));
  EXPECT_EQ(a * b, Rational(-1, 12));
  EXPECT_EQ((a / b).to_string(), "-1/3");
  EXPECT_THROW(Rational(1, 0), std::domain_error);
  EXPECT_EQ(to_string(static_cast<i128>(-185801) * 163 * 163), "-4936546769");
}
