#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "ltcm/curves.hpp"

namespace ltcm {

enum class TraceMethod { naive, cm };
const char* to_string(TraceMethod m);

struct TraceRecord {
  std::uint64_t p;
  std::int64_t ap;
  TraceMethod method;
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct CountResult {
  std::uint64_t x;
  std::int64_t r;
  std::uint64_t count;
  std::vector<std::uint64_t> excluded;
};

inline constexpr std::uint64_t kDefaultCountCeiling = 100'000'000ULL;
inline constexpr std::uint64_t kNaiveCrossover = 10'000ULL;
inline constexpr unsigned kDisambiguationPoints = 8;
inline constexpr std::uint64_t kDefaultSeed = 20240601ULL;

/// a_p = -sum_x (x^3 + Ax + B / p). O(p). Requires p > 3 and good reduction.
std::int64_t ap_naive(const CurveModP& E);

class AmbiguousTrace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CmOptions {
  std::uint64_t seed = kDefaultSeed;
  unsigned points = kDisambiguationPoints;
  bool fallback = true;  // when false, ambiguity throws AmbiguousTrace
};

/// CM trace: 0 for inert p; otherwise the unique candidate +-t from
/// t^2 + |disc_K| v^2 = 4p surviving [p+1-t]P = O on random points.
/// Requires p > 3 and p not a bad prime (std::invalid_argument otherwise).
TraceRecord ap_cm(const CurveSpec& curve, std::uint64_t p, const CmOptions& options = {});

/// a_p by the crossover rule (naive below kNaiveCrossover, cm above).
TraceRecord ap_auto(const CurveSpec& curve, std::uint64_t p, const CmOptions& options = {});

struct CountOptions {
  CmOptions cm;
  std::uint64_t ceiling = kDefaultCountCeiling;
  std::uint64_t crossover = kNaiveCrossover;
  std::optional<std::filesystem::path> cache_dir;
};

/// One pass over primes <= x; each target r gets its own CountResult.
std::map<std::int64_t, CountResult> count_traces(const CurveSpec& curve, std::uint64_t x,
                                                 const std::set<std::int64_t>& targets,
                                                 const CountOptions& options = {});

/// All TraceRecords for good p <= x, ascending.
std::vector<TraceRecord> trace_records(const CurveSpec& curve, std::uint64_t x, const CountOptions& options = {});

/// CSV cache: header "p,ap,method", ascending p.
void write_trace_cache(const std::filesystem::path& file, const std::vector<TraceRecord>& records);
std::vector<TraceRecord> read_trace_cache(const std::filesystem::path& file);

}  // namespace ltcm
