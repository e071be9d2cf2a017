#include "ltcm/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ltcm {

using u128 = unsigned __int128;

// ---------------------------------------------------------------- rationals

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string s;
  while (u != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

std::string Rational::to_string() const {
  if (den_ == 1) return ltcm::to_string(num_);
  return ltcm::to_string(num_) + "/" + ltcm::to_string(den_);
}

// ---------------------------------------------------------------- sieve

namespace {

std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t bound) : bound_(bound) {
  if (bound < 2 || bound > kMaxSieveBound) {
    throw std::invalid_argument("sieve bound must lie in [2, 1e9], got " + std::to_string(bound));
  }
  const double lb = std::log(static_cast<double>(bound));
  primes_.reserve(static_cast<std::size_t>(1.1 * static_cast<double>(bound) / std::max(1.0, lb - 1.2)) + 16);
  primes_.push_back(2);

  const std::vector<std::uint32_t> base = small_primes(isqrt(bound));

  // Bit i of a segment stands for the odd number lo + 2i.
  constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 18;
  std::vector<std::uint64_t> bits(kSegmentOdds / 64);
  for (std::uint64_t lo = 3; lo <= bound; lo += 2 * kSegmentOdds) {
    const std::uint64_t hi = std::min(bound, lo + 2 * kSegmentOdds - 1);
    std::fill(bits.begin(), bits.end(), 0);
    for (std::size_t k = 1; k < base.size(); ++k) {
      const std::uint64_t q = base[k];
      if (q * q > hi) break;
      std::uint64_t start = q * q;
      if (start < lo) {
        start = (lo + q - 1) / q * q;
        if ((start & 1) == 0) start += q;
      }
      for (std::uint64_t v = start; v <= hi; v += 2 * q) {
        const std::uint64_t i = (v - lo) >> 1;
        bits[i >> 6] |= std::uint64_t{1} << (i & 63);
      }
    }
    const std::uint64_t count = (hi - lo) / 2 + 1;
    for (std::uint64_t w = 0; w * 64 < count; ++w) {
      std::uint64_t free = ~bits[w];
      if ((w + 1) * 64 > count) free &= (std::uint64_t{1} << (count - w * 64)) - 1;
      while (free != 0) {
        const int b = std::countr_zero(free);
        primes_.push_back(static_cast<std::uint32_t>(lo + 2 * (w * 64 + static_cast<std::uint64_t>(b))));
        free &= free - 1;
      }
    }
  }
}

bool PrimeTable::contains(std::uint64_t n) const {
  return std::binary_search(primes_.begin(), primes_.end(), n,
                            [](std::uint64_t a, std::uint64_t b) { return a < b; });
}

std::size_t PrimeTable::count_upto(std::uint64_t x) const {
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), x,
                       [](std::uint64_t a, std::uint64_t b) { return a < b; }) -
      primes_.begin());
}

PrimeTable sieve(std::uint64_t bound) { return PrimeTable(bound); }

std::shared_ptr<const PrimeTable> shared_sieve(std::uint64_t bound) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> cached;
  std::lock_guard lock(mu);
  if (!cached || cached->bound() < bound) {
    cached = std::make_shared<const PrimeTable>(std::max<std::uint64_t>(bound, 2));
  }
  return cached;
}

// ---------------------------------------------------------------- modular basics

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    const i128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::domain_error("invmod: argument not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
  if (a >= 0) return static_cast<std::uint64_t>(a) % m;
  const std::uint64_t r = (static_cast<std::uint64_t>(-(a + 1)) + 1) % m;
  return r == 0 ? 0 : m - r;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::uint64_t n, std::uint64_t* root) {
  const std::uint64_t r = isqrt(n);
  if (root != nullptr) *root = r;
  return r * r == n;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  if (n <= 1) return out;
  auto strip = [&](std::uint64_t q) {
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e != 0) out.push_back({q, e});
  };
  strip(2);
  strip(3);
  for (std::uint64_t q = 5; q <= n / q; q += 6) {
    strip(q);
    strip(q + 2);
    if (n > 1 && n / q < q * 64 && is_prime(n)) break;
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("prime_divisors: zero has no finite set of prime divisors");
  const std::uint64_t u = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  std::vector<std::uint64_t> out;
  for (const auto& pp : factorize(u)) out.push_back(pp.p);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& pp : factorize(n)) phi = phi / pp.p * (pp.p - 1);
  return phi;
}

// ---------------------------------------------------------------- symbols

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) throw std::invalid_argument("kronecker: n must be nonzero");
  int result = 1;
  std::uint64_t un;
  if (n < 0) {
    un = static_cast<std::uint64_t>(-(n + 1)) + 1;
    if (a < 0) result = -result;
  } else {
    un = static_cast<std::uint64_t>(n);
  }
  if ((un & 1) == 0) {
    if ((a & 1) == 0) return 0;
    const int v = std::countr_zero(un);
    un >>= v;
    const std::uint64_t a8 = mod_floor(a, 8);
    if ((v & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol (a/un), un odd positive.
  std::uint64_t x = mod_floor(a, un);
  std::uint64_t y = un;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const std::uint64_t r = y & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, y);
    if ((x & 3) == 3 && (y & 3) == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

std::optional<std::uint64_t> sqrt_mod(std::int64_t a_signed, std::uint64_t p) {
  const std::uint64_t a = mod_floor(a_signed, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;

  std::uint64_t root;
  if ((p & 3) == 3) {
    root = powmod(a, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks.
    std::uint64_t q = p - 1;
    const int s = std::countr_zero(q);
    q >>= s;
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    int m = s;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(a, q, p);
    root = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
      int i = 0;
      std::uint64_t t2 = t;
      while (t2 != 1) {
        t2 = mulmod(t2, t2, p);
        ++i;
      }
      std::uint64_t b = c;
      for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
      m = i;
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      root = mulmod(root, b, p);
    }
  }
  return std::min(root, p - root);
}

namespace {

std::vector<std::uint64_t> sqrt_mod_prime_power(std::int64_t a_signed, std::uint64_t p, unsigned e) {
  std::vector<std::uint64_t> roots;
  if (p == 2) {
    const std::uint64_t a = mod_floor(a_signed, 2);
    roots.push_back(a);
  } else {
    const std::uint64_t a = mod_floor(a_signed, p);
    if (a == 0) {
      roots.push_back(0);
    } else if (auto r = sqrt_mod(a_signed, p)) {
      roots.push_back(*r);
      roots.push_back(p - *r);
    }
  }
  std::uint64_t pk = p;
  for (unsigned k = 1; k < e && !roots.empty(); ++k) {
    const std::uint64_t pk1 = pk * p;
    const std::uint64_t a = mod_floor(a_signed, pk1);
    std::vector<std::uint64_t> lifted;
    for (std::uint64_t r : roots) {
      if (p != 2 && r % p != 0) {
        // Hensel: the lift is unique.
        const std::uint64_t r2 = mulmod(r, r, pk1);
        const std::uint64_t diff = (r2 + pk1 - a) % pk1;
        const std::uint64_t step = mulmod(diff, invmod((2 * r) % pk1, pk1), pk1);
        lifted.push_back((r + pk1 - step) % pk1);
        continue;
      }
      for (std::uint64_t j = 0; j < p; ++j) {
        const std::uint64_t c = r + j * pk;
        if (mulmod(c, c, pk1) == a) lifted.push_back(c);
      }
    }
    roots = std::move(lifted);
    pk = pk1;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace

std::vector<std::uint64_t> sqrt_mod_all(std::int64_t a, std::uint64_t m,
                                        std::span<const PrimePower> factorization) {
  std::vector<std::uint64_t> roots{0};
  std::uint64_t modulus = 1;
  for (const auto& pp : factorization) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < pp.e; ++i) q *= pp.p;
    const auto local = sqrt_mod_prime_power(a, pp.p, pp.e);
    if (local.empty()) return {};
    std::vector<std::uint64_t> next;
    next.reserve(roots.size() * local.size());
    const std::uint64_t inv = modulus == 1 ? 0 : invmod(modulus % q, q);
    for (std::uint64_t r1 : roots) {
      for (std::uint64_t r2 : local) {
        // x = r1 + modulus * ((r2 - r1) * inv mod q)
        const std::uint64_t diff = (r2 + q - r1 % q) % q;
        const std::uint64_t k = mulmod(diff, inv, q);
        next.push_back(modulus == 1 ? r2 : r1 + modulus * k);
      }
    }
    roots = std::move(next);
    modulus *= q;
  }
  if (modulus != m) throw std::invalid_argument("sqrt_mod_all: factorization does not match modulus");
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---------------------------------------------------------------- cornacchia

namespace {

// Primitive solutions (gcd(x, y) = 1) of x^2 + d*y^2 = m.
void primitive_solutions(std::uint64_t d, std::uint64_t m, std::span<const PrimePower> fact,
                         std::uint64_t scale, std::vector<FormSolution>& out) {
  const std::uint64_t full_m = m * scale * scale;
  auto push = [&](std::uint64_t x, std::uint64_t y) {
    out.push_back({x * scale, y * scale, d, full_m});
  };
  if (m == 1) push(1, 0);
  if (m == d) push(0, 1);

  const std::uint64_t limit = isqrt(m);
  for (std::uint64_t root : sqrt_mod_all(-static_cast<std::int64_t>(d % m), m, fact)) {
    // A root and its negative give the same solution up to the sign of y, so
    // descend from the upper half only. d = 1 is the exception, see below.
    if (2 * root < m) root = m - root;
    std::uint64_t a = m;
    std::uint64_t b = root;
    while (b > limit) {
      const std::uint64_t r = a % b;
      a = b;
      b = r;
    }
    const std::uint64_t rem = m - b * b;
    if (rem == 0 || rem % d != 0) continue;
    std::uint64_t y;
    if (!is_square(rem / d, &y)) continue;
    if (std::gcd(b, y) != 1) continue;
    push(b, y);
    // For d = 1 the negated root belongs to the swapped pair.
    if (d == 1) push(y, b);
  }
}

}  // namespace

std::vector<FormSolution> cornacchia(std::uint64_t d, std::uint64_t m,
                                     std::span<const PrimePower> factorization) {
  if (d == 0 || m == 0) throw std::invalid_argument("cornacchia: d and m must be positive");
  std::vector<FormSolution> out;

  // Walk over square divisors f^2 of m; solve primitively on m / f^2.
  std::vector<PrimePower> fact(factorization.begin(), factorization.end());
  std::vector<unsigned> half(fact.size(), 0);
  while (true) {
    std::uint64_t f = 1;
    std::vector<PrimePower> reduced;
    for (std::size_t i = 0; i < fact.size(); ++i) {
      for (unsigned k = 0; k < half[i]; ++k) f *= fact[i].p;
      const unsigned rest = fact[i].e - 2 * half[i];
      if (rest != 0) reduced.push_back({fact[i].p, rest});
    }
    primitive_solutions(d, m / (f * f), reduced, f, out);

    std::size_t i = 0;
    for (; i < fact.size(); ++i) {
      if (2 * (half[i] + 1) <= fact[i].e) {
        ++half[i];
        break;
      }
      half[i] = 0;
    }
    if (i == fact.size()) break;
  }

  std::sort(out.begin(), out.end(), [](const FormSolution& l, const FormSolution& r) {
    return l.x != r.x ? l.x < r.x : l.y < r.y;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FormSolution> cornacchia(std::uint64_t d, std::uint64_t m) {
  if (d == 0 || m == 0) throw std::invalid_argument("cornacchia: d and m must be positive");
  const auto fact = factorize(m);
  return cornacchia(d, m, fact);
}

}  // namespace ltcm
