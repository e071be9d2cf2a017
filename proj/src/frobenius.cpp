#include "ltcm/frobenius.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <random>
#include <sstream>

#include "ltcm/arith.hpp"

namespace ltcm {

const char* to_string(TraceMethod m) { return m == TraceMethod::naive ? "naive" : "cm"; }

namespace {

// Montgomery arithmetic mod an odd p < 2^31.
class Mont {
 public:
  explicit Mont(std::uint32_t p) : p_(p) {
    std::uint32_t inv = p;
    for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
    ninv_ = 0u - inv;
    r2_ = static_cast<std::uint32_t>((static_cast<unsigned __int128>(1) << 64) % p);
  }
  std::uint32_t reduce(std::uint64_t t) const {
    const std::uint32_t m = static_cast<std::uint32_t>(t) * ninv_;
    const std::uint64_t u = (t + static_cast<std::uint64_t>(m) * p_) >> 32;
    return static_cast<std::uint32_t>(u >= p_ ? u - p_ : u);
  }
  std::uint32_t to(std::uint64_t x) const { return reduce((x % p_) * r2_); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return reduce(static_cast<std::uint64_t>(a) * b); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }

 private:
  std::uint32_t p_;
  std::uint32_t ninv_;
  std::uint32_t r2_;
};

struct Jac {
  std::uint32_t X, Y, Z;  // Z == 0 is the point at infinity
};

class CurveArith {
 public:
  CurveArith(const Mont& F, std::uint32_t a) : F_(F), a_(a) {}

  Jac dbl(const Jac& P) const {
    if (P.Z == 0 || P.Y == 0) return {0, 1, 0};
    const Mont& F = F_;
    const std::uint32_t XX = F.mul(P.X, P.X);
    const std::uint32_t YY = F.mul(P.Y, P.Y);
    const std::uint32_t YYYY = F.mul(YY, YY);
    const std::uint32_t ZZ = F.mul(P.Z, P.Z);
    std::uint32_t S = F.mul(P.X, YY);
    S = F.add(S, S);
    S = F.add(S, S);
    const std::uint32_t M = F.add(F.add(F.add(XX, XX), XX), F.mul(a_, F.mul(ZZ, ZZ)));
    const std::uint32_t X3 = F.sub(F.mul(M, M), F.add(S, S));
    std::uint32_t Y8 = F.add(YYYY, YYYY);
    Y8 = F.add(Y8, Y8);
    Y8 = F.add(Y8, Y8);
    const std::uint32_t Y3 = F.sub(F.mul(M, F.sub(S, X3)), Y8);
    const std::uint32_t YZ = F.mul(P.Y, P.Z);
    return {X3, Y3, F.add(YZ, YZ)};
  }

  // P + Q with Q affine (x, y).
  Jac add_affine(const Jac& P, std::uint32_t x, std::uint32_t y, std::uint32_t one) const {
    if (P.Z == 0) return {x, y, one};
    const Mont& F = F_;
    const std::uint32_t ZZ = F.mul(P.Z, P.Z);
    const std::uint32_t U2 = F.mul(x, ZZ);
    const std::uint32_t S2 = F.mul(y, F.mul(ZZ, P.Z));
    if (U2 == P.X) {
      if (S2 == P.Y) return dbl(P);
      return {0, 1, 0};
    }
    const std::uint32_t H = F.sub(U2, P.X);
    const std::uint32_t R = F.sub(S2, P.Y);
    const std::uint32_t HH = F.mul(H, H);
    const std::uint32_t HHH = F.mul(HH, H);
    const std::uint32_t V = F.mul(P.X, HH);
    const std::uint32_t X3 = F.sub(F.sub(F.mul(R, R), HHH), F.add(V, V));
    const std::uint32_t Y3 = F.sub(F.mul(R, F.sub(V, X3)), F.mul(P.Y, HHH));
    return {X3, Y3, F.mul(P.Z, H)};
  }

  bool kills(std::uint64_t n, std::uint32_t x, std::uint32_t y, std::uint32_t one) const {
    if (n == 0) return true;
    Jac R{0, 1, 0};
    for (int bit = 63 - std::countl_zero(n); bit >= 0; --bit) {
      R = dbl(R);
      if ((n >> bit) & 1) R = add_affine(R, x, y, one);
    }
    return R.Z == 0;
  }

 private:
  const Mont& F_;
  std::uint32_t a_;
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t abs_u(std::int64_t v) { return v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v); }

bool is_bad(const CurveSpec& curve, std::uint64_t p) {
  return p <= 3 || std::find(curve.bad_primes.begin(), curve.bad_primes.end(), p) != curve.bad_primes.end();
}

CurveModP reduce_short(const ShortForm& s, std::uint64_t p) {
  return {p, mod_floor(s.A_int, p), mod_floor(s.B_int, p)};
}

TraceRecord ap_cm_impl(const CurveSpec& curve, const CurveModP& E, const CmOptions& opt) {
  const std::uint64_t p = E.p;
  if (kronecker(curve.disc_K, static_cast<std::int64_t>(p)) == -1) return {p, 0, TraceMethod::cm};

  const std::uint64_t d = abs_u(curve.disc_K);
  const PrimePower fact[] = {{2, 2}, {p, 1}};
  std::vector<std::int64_t> candidates;
  for (const auto& s : cornacchia(d, 4 * p, fact)) {
    candidates.push_back(static_cast<std::int64_t>(s.x));
    candidates.push_back(-static_cast<std::int64_t>(s.x));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  if (!candidates.empty() && p < (1ULL << 31)) {
    const Mont F(static_cast<std::uint32_t>(p));
    const CurveArith C(F, F.to(E.A));
    const std::uint32_t one = F.to(1);
    std::mt19937_64 rng(splitmix(opt.seed ^ splitmix(p)));
    std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
    unsigned tested = 0;
    while (tested < opt.points && !candidates.empty()) {
      const std::uint64_t x = pick(rng);
      const std::uint64_t fx = (mulmod(mulmod(x, x, p), x, p) + mulmod(E.A, x, p) + E.B) % p;
      const auto y = sqrt_mod(static_cast<std::int64_t>(fx), p);
      if (!y) continue;
      ++tested;
      const std::uint32_t xm = F.to(x);
      const std::uint32_t ym = F.to(*y);
      std::erase_if(candidates, [&](std::int64_t t) {
        return !C.kills(static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 - t), xm, ym, one);
      });
    }
    if (candidates.size() == 1) return {p, candidates.front(), TraceMethod::cm};
  }
  if (!opt.fallback) throw AmbiguousTrace("ambiguous CM trace at p=" + std::to_string(p) + " for " + curve.id);
  return {p, ap_naive(E), TraceMethod::naive};
}

}  // namespace

std::int64_t ap_naive(const CurveModP& E) {
  const std::uint64_t p = E.p;
  // Quadratic character table via incremental squares.
  std::vector<std::int8_t> chi(p, -1);
  chi[0] = 0;
  std::uint64_t sq = 0;
  for (std::uint64_t x = 1; x <= p / 2; ++x) {
    sq += 2 * x - 1;
    if (sq >= p) sq %= p;
    chi[sq] = 1;
  }
  // f(x) = x^3 + A x + B by forward differences: d1 = f(x+1)-f(x), d2, d3 = 6.
  std::uint64_t f = E.B % p;
  std::uint64_t d1 = (1 + E.A) % p;
  std::uint64_t d2 = 6 % p;
  const std::uint64_t d3 = 6 % p;
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    sum += chi[f];
    f += d1;
    if (f >= p) f -= p;
    d1 += d2;
    if (d1 >= p) d1 -= p;
    d2 += d3;
    if (d2 >= p) d2 -= p;
  }
  return -sum;
}

TraceRecord ap_cm(const CurveSpec& curve, std::uint64_t p, const CmOptions& options) {
  if (is_bad(curve, p)) throw std::invalid_argument("ap_cm: p=" + std::to_string(p) + " is excluded for " + curve.id);
  return ap_cm_impl(curve, reduce_short(to_short(curve), p), options);
}

TraceRecord ap_auto(const CurveSpec& curve, std::uint64_t p, const CmOptions& options) {
  if (is_bad(curve, p)) throw std::invalid_argument("ap_auto: p=" + std::to_string(p) + " is excluded for " + curve.id);
  const CurveModP E = reduce_short(to_short(curve), p);
  if (p < kNaiveCrossover) return {p, ap_naive(E), TraceMethod::naive};
  return ap_cm_impl(curve, E, options);
}

// ---------------------------------------------------------------- cache

void write_trace_cache(const std::filesystem::path& file, const std::vector<TraceRecord>& records) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const auto tmp = std::filesystem::path(file.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write trace cache " + tmp.string());
    out << "p,ap,method\n";
    for (const auto& r : records) out << r.p << ',' << r.ap << ',' << to_string(r.method) << '\n';
  }
  std::filesystem::rename(tmp, file);
}

std::vector<TraceRecord> read_trace_cache(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read trace cache " + file.string());
  std::string line;
  if (!std::getline(in, line) || line != "p,ap,method") {
    throw std::runtime_error("trace cache " + file.string() + " lacks the p,ap,method header");
  }
  std::vector<TraceRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string p, ap, method;
    if (!std::getline(ss, p, ',') || !std::getline(ss, ap, ',') || !std::getline(ss, method)) {
      throw std::runtime_error("malformed trace cache line: " + line);
    }
    out.push_back({std::stoull(p), std::stoll(ap), method == "cm" ? TraceMethod::cm : TraceMethod::naive});
  }
  return out;
}

namespace {

// A cache file "<id>_x<bound>.csv" serves any x <= bound.
std::optional<std::vector<TraceRecord>> load_cached(const std::filesystem::path& dir, const std::string& id,
                                                    std::uint64_t x) {
  if (!std::filesystem::is_directory(dir)) return std::nullopt;
  const std::string prefix = id + "_x";
  std::optional<std::pair<std::uint64_t, std::filesystem::path>> best;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) != 0 || entry.path().extension() != ".csv") continue;
    const std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - 4);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) continue;
    const std::uint64_t bound = std::stoull(digits);
    if (bound >= x && (!best || bound < best->first)) best = {bound, entry.path()};
  }
  if (!best) return std::nullopt;
  auto records = read_trace_cache(best->second);
  std::erase_if(records, [x](const TraceRecord& r) { return r.p > x; });
  return records;
}

}  // namespace

std::vector<TraceRecord> trace_records(const CurveSpec& curve, std::uint64_t x, const CountOptions& options) {
  if (x > options.ceiling) {
    throw std::invalid_argument("count bound " + std::to_string(x) + " exceeds ceiling " + std::to_string(options.ceiling));
  }
  if (options.cache_dir) {
    if (auto cached = load_cached(*options.cache_dir, curve.id, x)) return *cached;
  }
  std::vector<TraceRecord> out;
  if (x >= 2) {
    const auto table = shared_sieve(x);
    const ShortForm s = to_short(curve);
    for (std::uint32_t p : table->primes()) {
      if (p > x) break;
      if (is_bad(curve, p)) continue;
      const CurveModP E = reduce_short(s, p);
      if (p < options.crossover) {
        out.push_back({p, ap_naive(E), TraceMethod::naive});
      } else {
        out.push_back(ap_cm_impl(curve, E, options.cm));
      }
    }
  }
  if (options.cache_dir) {
    write_trace_cache(*options.cache_dir / (curve.id + "_x" + std::to_string(x) + ".csv"), out);
  }
  return out;
}

std::map<std::int64_t, CountResult> count_traces(const CurveSpec& curve, std::uint64_t x,
                                                 const std::set<std::int64_t>& targets, const CountOptions& options) {
  std::vector<std::uint64_t> excluded;
  for (std::uint64_t q : {2ULL, 3ULL}) {
    if (q <= x) excluded.push_back(q);
  }
  for (std::uint64_t q : curve.bad_primes) {
    if (q <= x && q > 3) excluded.push_back(q);
  }
  std::sort(excluded.begin(), excluded.end());

  std::map<std::int64_t, CountResult> out;
  for (std::int64_t r : targets) out[r] = {x, r, 0, excluded};
  for (const auto& rec : trace_records(curve, x, options)) {
    auto it = out.find(rec.ap);
    if (it != out.end()) ++it->second.count;
  }
  return out;
}

}  // namespace ltcm
