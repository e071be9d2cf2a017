#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ltcm {

/// 2x2 matrix (a b; c d) over Z/NZ, entries reduced to [0, N).
struct ResidueMatrix {
  std::uint32_t N = 2;
  std::uint32_t a = 1, b = 0, c = 0, d = 1;

  static ResidueMatrix identity(std::uint32_t N) { return {N, 1 % N, 0, 0, 1 % N}; }
  /// Builds from signed entries, reducing mod N.
  static ResidueMatrix make(std::uint32_t N, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  std::uint32_t det() const;
  std::uint32_t trace() const;
  bool invertible() const;
  ResidueMatrix inverse() const;  // throws std::domain_error if singular
  ResidueMatrix reduce(std::uint32_t M) const;  // M must divide N

  friend ResidueMatrix operator*(const ResidueMatrix& x, const ResidueMatrix& y);
  friend bool operator==(const ResidueMatrix&, const ResidueMatrix&) = default;
  friend auto operator<=>(const ResidueMatrix&, const ResidueMatrix&) = default;
};

/// Finite subgroup of GL2(Z/NZ) held as an explicit, lexicographically sorted
/// element list.
class MatrixGroup {
 public:
  MatrixGroup() = default;
  /// Sorts and deduplicates; does not check closure (see is_group).
  MatrixGroup(std::uint32_t N, std::vector<ResidueMatrix> elements, std::string label);

  std::uint32_t modulus() const { return N_; }
  std::size_t order() const { return elements_.size(); }
  std::span<const ResidueMatrix> elements() const { return elements_; }
  const std::string& label() const { return label_; }
  bool contains(const ResidueMatrix& m) const;

  /// Identity, closure and invertibility. Exhaustive on pairs when the order
  /// is at most exhaustive_limit, otherwise `samples` random products.
  bool is_group(std::size_t exhaustive_limit = 5000, std::size_t samples = 200000) const;
  bool is_abelian(std::size_t exhaustive_limit = 5000, std::size_t samples = 200000) const;

  friend bool operator==(const MatrixGroup& x, const MatrixGroup& y) {
    return x.N_ == y.N_ && x.elements_ == y.elements_;
  }

 private:
  std::uint32_t N_ = 1;
  std::vector<ResidueMatrix> elements_;
  std::string label_;
};

/// Parameters of C_{delta,phi}(N) = {(a+b*phi, b; delta*b, a)}. disc is the
/// order discriminant the group houses.
struct CartanParams {
  std::uint32_t N;
  std::uint32_t delta;
  std::uint32_t phi;
  std::int64_t disc;

  /// delta = disc/4, phi = 0 if disc = 0 mod 4 or N odd (dividing by 4 in Z/NZ
  /// in the latter case); otherwise delta = (disc_K - 1) f^2 / 4, phi = f.
  static CartanParams for_order(std::int64_t disc_K, std::uint32_t f, std::uint32_t N);
  /// Raw parameters, reduced mod N.
  static CartanParams raw(std::uint32_t N, std::int64_t delta, std::int64_t phi, std::int64_t disc = 0);
};

MatrixGroup cartan(const CartanParams& params);
MatrixGroup normalizer(const CartanParams& params);
/// Closure of the generators under multiplication (breadth-first from the
/// identity). Throws std::invalid_argument on a singular generator or a
/// modulus mismatch.
MatrixGroup generated_subgroup(std::uint32_t N, std::span<const ResidueMatrix> generators,
                               std::string label = "generated");
/// Entrywise CRT lift of G1 x G2. Throws std::invalid_argument unless the
/// moduli are coprime.
MatrixGroup crt_combine(const MatrixGroup& G1, const MatrixGroup& G2);
/// Residue x mod m*n with x = u mod m and x = v mod n.
std::uint32_t crt_lift(std::uint32_t u, std::uint32_t m, std::uint32_t v, std::uint32_t n);
/// Trace mod N -> number of elements.
std::map<std::uint32_t, std::uint64_t> trace_census(const MatrixGroup& G);
MatrixGroup squares_subgroup(const MatrixGroup& G);
/// Image of G under reduction to Z/MZ (M | N).
MatrixGroup project(const MatrixGroup& G, std::uint32_t M);
/// Elements of `container` whose reduction mod small.modulus() lies in small.
MatrixGroup preimage_within(const MatrixGroup& small, const MatrixGroup& container);

}  // namespace ltcm
