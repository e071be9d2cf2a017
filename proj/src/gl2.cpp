#include "ltcm/gl2.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "ltcm/arith.hpp"

namespace ltcm {

namespace {

std::uint32_t red(std::int64_t v, std::uint32_t N) { return static_cast<std::uint32_t>(mod_floor(v, N)); }

std::uint32_t mul_mod(std::uint32_t x, std::uint32_t y, std::uint32_t N) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % N);
}

std::uint64_t key(const ResidueMatrix& m) {
  const std::uint64_t N = m.N;
  return ((static_cast<std::uint64_t>(m.a) * N + m.b) * N + m.c) * N + m.d;
}

}  // namespace

ResidueMatrix ResidueMatrix::make(std::uint32_t N, std::int64_t a, std::int64_t b, std::int64_t c,
                                  std::int64_t d) {
  if (N < 1) throw std::invalid_argument("ResidueMatrix: modulus must be positive");
  return {N, red(a, N), red(b, N), red(c, N), red(d, N)};
}

std::uint32_t ResidueMatrix::det() const {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * d + N - mul_mod(b, c, N) % N) % N);
}

std::uint32_t ResidueMatrix::trace() const { return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + d) % N); }

bool ResidueMatrix::invertible() const { return std::gcd(det(), N) == 1; }

ResidueMatrix ResidueMatrix::inverse() const {
  const std::uint32_t di = static_cast<std::uint32_t>(invmod(det(), N));
  return {N, mul_mod(d, di, N), mul_mod((N - b) % N, di, N), mul_mod((N - c) % N, di, N), mul_mod(a, di, N)};
}

ResidueMatrix ResidueMatrix::reduce(std::uint32_t M) const {
  if (M == 0 || N % M != 0) throw std::invalid_argument("ResidueMatrix::reduce: target modulus must divide N");
  return {M, a % M, b % M, c % M, d % M};
}

ResidueMatrix operator*(const ResidueMatrix& x, const ResidueMatrix& y) {
  if (x.N != y.N) throw std::invalid_argument("ResidueMatrix: modulus mismatch");
  const std::uint64_t N = x.N;
  return {x.N,
          static_cast<std::uint32_t>((static_cast<std::uint64_t>(x.a) * y.a + static_cast<std::uint64_t>(x.b) * y.c) % N),
          static_cast<std::uint32_t>((static_cast<std::uint64_t>(x.a) * y.b + static_cast<std::uint64_t>(x.b) * y.d) % N),
          static_cast<std::uint32_t>((static_cast<std::uint64_t>(x.c) * y.a + static_cast<std::uint64_t>(x.d) * y.c) % N),
          static_cast<std::uint32_t>((static_cast<std::uint64_t>(x.c) * y.b + static_cast<std::uint64_t>(x.d) * y.d) % N)};
}

// ---------------------------------------------------------------- MatrixGroup

MatrixGroup::MatrixGroup(std::uint32_t N, std::vector<ResidueMatrix> elements, std::string label)
    : N_(N), elements_(std::move(elements)), label_(std::move(label)) {
  for (const auto& m : elements_) {
    if (m.N != N_) throw std::invalid_argument("MatrixGroup: element modulus mismatch");
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool MatrixGroup::contains(const ResidueMatrix& m) const {
  return m.N == N_ && std::binary_search(elements_.begin(), elements_.end(), m);
}

bool MatrixGroup::is_group(std::size_t exhaustive_limit, std::size_t samples) const {
  if (elements_.empty() || !contains(ResidueMatrix::identity(N_))) return false;
  for (const auto& g : elements_) {
    if (!g.invertible() || !contains(g.inverse())) return false;
  }
  std::unordered_set<std::uint64_t> keys;
  keys.reserve(elements_.size() * 2);
  for (const auto& g : elements_) keys.insert(key(g));
  const std::size_t n = elements_.size();
  if (n <= exhaustive_limit) {
    for (const auto& g : elements_) {
      for (const auto& h : elements_) {
        if (!keys.contains(key(g * h))) return false;
      }
    }
    return true;
  }
  std::mt19937_64 rng(0x5eed ^ n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    if (!keys.contains(key(elements_[pick(rng)] * elements_[pick(rng)]))) return false;
  }
  return true;
}

bool MatrixGroup::is_abelian(std::size_t exhaustive_limit, std::size_t samples) const {
  const std::size_t n = elements_.size();
  if (n <= exhaustive_limit) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (elements_[i] * elements_[j] != elements_[j] * elements_[i]) return false;
      }
    }
    return true;
  }
  std::mt19937_64 rng(0xab ^ n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto& g = elements_[pick(rng)];
    const auto& h = elements_[pick(rng)];
    if (g * h != h * g) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Cartan data

CartanParams CartanParams::for_order(std::int64_t disc_K, std::uint32_t f, std::uint32_t N) {
  if (N < 2) throw std::invalid_argument("CartanParams: modulus must be at least 2");
  const std::int64_t disc = disc_K * static_cast<std::int64_t>(f) * static_cast<std::int64_t>(f);
  if (mod_floor(disc, 4) == 0) return raw(N, disc / 4, 0, disc);
  if (N % 2 == 1) {
    const std::uint64_t inv4 = invmod(4, N);
    return {N, static_cast<std::uint32_t>(mulmod(mod_floor(disc, N), inv4, N)), 0, disc};
  }
  return raw(N, (disc_K - 1) * static_cast<std::int64_t>(f) * f / 4, f, disc);
}

CartanParams CartanParams::raw(std::uint32_t N, std::int64_t delta, std::int64_t phi, std::int64_t disc) {
  if (N < 2) throw std::invalid_argument("CartanParams: modulus must be at least 2");
  return {N, red(delta, N), red(phi, N), disc};
}

MatrixGroup cartan(const CartanParams& p) {
  const std::uint32_t N = p.N;
  std::vector<ResidueMatrix> out;
  for (std::uint32_t a = 0; a < N; ++a) {
    for (std::uint32_t b = 0; b < N; ++b) {
      const ResidueMatrix m{N, static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + mul_mod(b, p.phi, N)) % N), b,
                            mul_mod(p.delta, b, N), a};
      if (m.invertible()) out.push_back(m);
    }
  }
  return MatrixGroup(N, std::move(out),
                     "C(" + std::to_string(N) + ";delta=" + std::to_string(p.delta) + ",phi=" + std::to_string(p.phi) + ")");
}

MatrixGroup normalizer(const CartanParams& p) {
  const MatrixGroup C = cartan(p);
  const ResidueMatrix c_phi = ResidueMatrix::make(p.N, -1, 0, p.phi, 1);
  std::vector<ResidueMatrix> out(C.elements().begin(), C.elements().end());
  for (const auto& g : C.elements()) out.push_back(g * c_phi);
  return MatrixGroup(p.N, std::move(out),
                     "N(" + std::to_string(p.N) + ";delta=" + std::to_string(p.delta) + ",phi=" + std::to_string(p.phi) + ")");
}

MatrixGroup generated_subgroup(std::uint32_t N, std::span<const ResidueMatrix> generators, std::string label) {
  for (const auto& g : generators) {
    if (g.N != N) throw std::invalid_argument("generated_subgroup: generator modulus mismatch");
    if (!g.invertible()) throw std::invalid_argument("generated_subgroup: singular generator");
  }
  std::vector<ResidueMatrix> gens(generators.begin(), generators.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  const ResidueMatrix id = ResidueMatrix::identity(N);
  std::unordered_set<std::uint64_t> seen{key(id)};
  std::vector<ResidueMatrix> elements{id};
  std::deque<ResidueMatrix> frontier{id};
  while (!frontier.empty()) {
    const ResidueMatrix g = frontier.front();
    frontier.pop_front();
    for (const auto& s : gens) {
      const ResidueMatrix h = g * s;
      if (seen.insert(key(h)).second) {
        elements.push_back(h);
        frontier.push_back(h);
      }
    }
  }
  return MatrixGroup(N, std::move(elements), std::move(label));
}

std::uint32_t crt_lift(std::uint32_t u, std::uint32_t m, std::uint32_t v, std::uint32_t n) {
  if (std::gcd(m, n) != 1) throw std::invalid_argument("crt_lift: moduli must be coprime");
  const std::uint64_t M = static_cast<std::uint64_t>(m) * n;
  if (n == 1) return u % m;
  const std::uint64_t inv = invmod(m % n, n);
  const std::uint64_t k = mulmod((v % n + n - u % n) % n, inv, n);
  return static_cast<std::uint32_t>((u % m + static_cast<std::uint64_t>(m) * k) % M);
}

MatrixGroup crt_combine(const MatrixGroup& G1, const MatrixGroup& G2) {
  const std::uint32_t m = G1.modulus();
  const std::uint32_t n = G2.modulus();
  if (std::gcd(m, n) != 1) throw std::invalid_argument("crt_combine: moduli must be coprime");
  const std::uint32_t mn = m * n;
  std::vector<ResidueMatrix> out;
  out.reserve(G1.order() * G2.order());
  for (const auto& x : G1.elements()) {
    for (const auto& y : G2.elements()) {
      out.push_back({mn, crt_lift(x.a, m, y.a, n), crt_lift(x.b, m, y.b, n), crt_lift(x.c, m, y.c, n),
                     crt_lift(x.d, m, y.d, n)});
    }
  }
  return MatrixGroup(mn, std::move(out), G1.label() + " x " + G2.label());
}

std::map<std::uint32_t, std::uint64_t> trace_census(const MatrixGroup& G) {
  std::map<std::uint32_t, std::uint64_t> census;
  for (const auto& g : G.elements()) ++census[g.trace()];
  return census;
}

MatrixGroup squares_subgroup(const MatrixGroup& G) {
  std::vector<ResidueMatrix> sq;
  sq.reserve(G.order());
  for (const auto& g : G.elements()) sq.push_back(g * g);
  std::sort(sq.begin(), sq.end());
  sq.erase(std::unique(sq.begin(), sq.end()), sq.end());
  return generated_subgroup(G.modulus(), sq, "squares(" + G.label() + ")");
}

MatrixGroup project(const MatrixGroup& G, std::uint32_t M) {
  std::vector<ResidueMatrix> out;
  out.reserve(G.order());
  for (const auto& g : G.elements()) out.push_back(g.reduce(M));
  return MatrixGroup(M, std::move(out), "proj" + std::to_string(M) + "(" + G.label() + ")");
}

MatrixGroup preimage_within(const MatrixGroup& small, const MatrixGroup& container) {
  std::vector<ResidueMatrix> out;
  for (const auto& g : container.elements()) {
    if (small.contains(g.reduce(small.modulus()))) out.push_back(g);
  }
  return MatrixGroup(container.modulus(), std::move(out), "preimage(" + small.label() + ")");
}

}  // namespace ltcm
