#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ltcm/rational.hpp"

namespace ltcm {

inline constexpr std::uint64_t kMaxSieveBound = 1'000'000'000ULL;

/// All primes up to a bound, strictly increasing. Immutable once built.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t bound);

  std::uint64_t bound() const { return bound_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  bool contains(std::uint64_t n) const;
  /// Number of primes <= x (x may not exceed bound()).
  std::size_t count_upto(std::uint64_t x) const;

 private:
  std::uint64_t bound_;
  std::vector<std::uint32_t> primes_;
};

/// Segmented odd-only sieve. Memory is O(sqrt(bound) + segment) beyond the
/// returned table. Throws std::invalid_argument unless 2 <= bound <= 1e9.
PrimeTable sieve(std::uint64_t bound);
/// Process-wide cached table covering at least `bound` (thread-safe).
std::shared_ptr<const PrimeTable> shared_sieve(std::uint64_t bound);

struct PrimePower {
  std::uint64_t p;
  unsigned e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Trial-division factorization, primes ascending. factorize(1) is empty.
std::vector<PrimePower> factorize(std::uint64_t n);
/// Distinct prime divisors of |n| (n != 0).
std::vector<std::uint64_t> prime_divisors(std::int64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
/// Least nonnegative residue of a modulo m (m > 0).
std::uint64_t mod_floor(std::int64_t a, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Kronecker symbol (a/n). Throws std::invalid_argument for n == 0.
int kronecker(std::int64_t a, std::int64_t n);

/// Square root of a modulo an odd prime p: the root r with r <= (p-1)/2, or
/// nullopt when a is a non-residue. Primality of p is the caller's contract
/// and is not checked.
std::optional<std::uint64_t> sqrt_mod(std::int64_t a, std::uint64_t p);

/// Every r in [0, m) with r^2 == a (mod m), ascending. The factorization of m
/// must be supplied.
std::vector<std::uint64_t> sqrt_mod_all(std::int64_t a, std::uint64_t m,
                                        std::span<const PrimePower> factorization);

/// One representation m = x^2 + d*y^2.
struct FormSolution {
  std::uint64_t x;
  std::uint64_t y;
  std::uint64_t d;
  std::uint64_t m;
  friend bool operator==(const FormSolution&, const FormSolution&) = default;
};

/// All (x, y) with x, y >= 0 and x^2 + d*y^2 = m, imprimitive ones included,
/// sorted by x. Requires d >= 1, m >= 1 (std::invalid_argument otherwise).
std::vector<FormSolution> cornacchia(std::uint64_t d, std::uint64_t m);
/// Same, with the factorization of m given (skips trial division).
std::vector<FormSolution> cornacchia(std::uint64_t d, std::uint64_t m,
                                     std::span<const PrimePower> factorization);

/// floor(sqrt(n)) exactly.
std::uint64_t isqrt(std::uint64_t n);
bool is_square(std::uint64_t n, std::uint64_t* root = nullptr);

std::uint64_t euler_phi(std::uint64_t n);

}  // namespace ltcm
