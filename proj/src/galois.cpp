#include "ltcm/galois.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "ltcm/arith.hpp"

namespace ltcm {

namespace {

// Conductor of the order whose Cartan houses the class's Galois model: the
// j = 1728 and j = 0 classes are modelled on their conductor-2 members.
std::uint32_t model_conductor(const CurveSpec& c) { return (c.D == 1 || c.D == 3) ? 2 : 1; }

std::uint32_t ipow(std::uint32_t p, unsigned k) {
  std::uint32_t r = 1;
  while (k-- > 0) r *= p;
  return r;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

const char* local_recipe(const CurveSpec& c, std::uint32_t p) {
  if (c.D == 1 && p == 2) return "<5I, (-1 -1; -delta -1)>";
  if (c.D == 3 && p == 3) return "squares of the Cartan";
  if (c.D >= 7 && p == c.D) return "squares of the Cartan {(a b; 0 a)}";
  return "full Cartan";
}

}  // namespace

CartanParams local_cartan_params(const CurveSpec& curve, std::uint32_t p, unsigned k) {
  return CartanParams::for_order(curve.disc_K, model_conductor(curve), ipow(p, k));
}

MatrixGroup local_group(const CurveSpec& curve, std::uint32_t p, unsigned k) {
  if (k == 0) throw std::invalid_argument("local_group: level exponent must be positive");
  const CartanParams params = local_cartan_params(curve, p, k);
  const std::uint32_t N = params.N;
  const std::string tag = curve.isogeny_class + "@" + std::to_string(N);
  if (curve.D == 1 && p == 2) {
    const std::int64_t delta = params.delta;
    const ResidueMatrix gens[] = {ResidueMatrix::make(N, 5, 0, 0, 5), ResidueMatrix::make(N, -1, -1, -delta, -1)};
    return generated_subgroup(N, gens, tag + ":" + local_recipe(curve, p));
  }
  if ((curve.D == 3 && p == 3) || (curve.D >= 7 && p == curve.D)) {
    MatrixGroup sq = squares_subgroup(cartan(params));
    return MatrixGroup(N, {sq.elements().begin(), sq.elements().end()}, tag + ":" + local_recipe(curve, p));
  }
  MatrixGroup full = cartan(params);
  return MatrixGroup(N, {full.elements().begin(), full.elements().end()}, tag + ":" + local_recipe(curve, p));
}

const GaloisModel& build_group(const CurveSpec& curve) {
  static std::mutex mu;
  static std::map<std::string, GaloisModel> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(curve.isogeny_class); it != cache.end()) return it->second;

  const auto parts = factorize(curve.m_E);
  MatrixGroup group;
  std::string recipe;
  bool first = true;
  for (const auto& pp : parts) {
    MatrixGroup local = local_group(curve, static_cast<std::uint32_t>(pp.p), pp.e);
    const std::string clause = "mod " + std::to_string(local.modulus()) + ": " + local_recipe(curve, static_cast<std::uint32_t>(pp.p)) +
                               " (order " + std::to_string(local.order()) + ")";
    recipe += first ? clause : "; " + clause;
    group = first ? std::move(local) : crt_combine(group, local);
    first = false;
  }
  // Named after the first member with the model's conductor, starred curves preferred.
  std::string model_id;
  for (const CurveSpec* m : class_members(curve)) {
    if (m->order_conductor != model_conductor(curve)) continue;
    if (model_id.empty() || m->id.back() == 's') model_id = m->id;
  }
  GaloisModel model{model_id, MatrixGroup(group.modulus(), {group.elements().begin(), group.elements().end()},
                                          "Gal(K(E[" + std::to_string(curve.m_E) + "])/K) for " + curve.isogeny_class),
                    recipe};
  return cache.emplace(curve.isogeny_class, std::move(model)).first->second;
}

Rational kappa(const CurveSpec& curve, std::int64_t r) {
  if (r == 0) throw std::invalid_argument("kappa: r = 0 is excluded for CM curves");
  const GaloisModel& model = build_group(curve);
  const auto census = trace_census(model.group);
  const auto it = census.find(static_cast<std::uint32_t>(mod_floor(r, curve.m_E)));
  if (it == census.end()) return Rational(0);
  return Rational(static_cast<i128>(it->second), static_cast<i128>(model.group.order()));
}

GammaSet gamma_set(const CurveSpec& curve) {
  GammaSet g{curve.m_E, {}};
  for (const auto& [t, n] : trace_census(build_group(curve).group)) {
    if (n != 0) g.residues.push_back(t);
  }
  return g;
}

bool verify_mE(const CurveSpec& curve, unsigned multiplier) {
  if (multiplier != 2 && multiplier != 3 && multiplier != 5) {
    throw std::invalid_argument("verify_mE: multiplier must be 2, 3 or 5");
  }
  const std::uint64_t M = static_cast<std::uint64_t>(multiplier) * curve.m_E;
  for (const auto& pp : factorize(M)) {
    const auto p = static_cast<std::uint32_t>(pp.p);
    const unsigned k = pp.e;
    const unsigned k0 = valuation(curve.m_E, p);
    if (k == k0) continue;
    const MatrixGroup big = local_group(curve, p, k);
    const MatrixGroup container = cartan(local_cartan_params(curve, p, k));
    for (const auto& g : big.elements()) {
      if (!container.contains(g)) return false;
    }
    if (!big.is_group()) return false;
    if (k0 == 0) {
      // Coprime to m_E: the image is the whole Cartan.
      if (!(big == container)) return false;
      continue;
    }
    const MatrixGroup small = local_group(curve, p, k0);
    if (!(project(big, small.modulus()) == small)) return false;
    if (!(big == preimage_within(small, container))) return false;
  }
  return true;
}

}  // namespace ltcm
