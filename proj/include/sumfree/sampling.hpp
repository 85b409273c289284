#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sumfree/common.hpp"
#include "sumfree/core.hpp"

namespace sumfree {

/// Rejection sampling would accept fewer than one draw in a million.
class InfeasibleSampling : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SampleCell {
  int ell = 0;
  std::int64_t twice_k = 0;
  bool odd = false;
  friend auto operator<=>(const SampleCell&, const SampleCell&) = default;
};

struct Quantiles {
  double q25 = 0, median = 0, q75 = 0;
};

struct SampleReport {
  int n = 0;
  int m = 0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::uint64_t draws = 0;
  double acceptance_estimate = 0;
  std::map<SampleCell, std::uint64_t> histogram;
  std::map<std::uint64_t, std::uint64_t> set_frequencies;  // bitmask -> hits
  Quantiles ell;
  Quantiles k;
};

struct SampleOptions {
  int workers = 1;
  /// Exact counts are used for the feasibility estimate up to this n.
  int exact_limit = 32;
  double min_acceptance = 1e-6;
};

/// Uniform sum-free m-subsets of [n] (default convention) by rejection.
/// Worker w draws from a generator seeded with (seed, w); the report is a
/// function of (seed, workers).
SampleReport sample_uniform(int n, int m, std::uint64_t count, std::uint64_t seed, const SampleOptions& opts = {});

/// m as a function of n: sqrt, half, fixed:K, frac:X.
struct MRule {
  enum class Kind { sqrt, half, fixed, frac } kind = Kind::sqrt;
  double param = 0;

  static MRule parse(std::string_view text);
  int apply(int n) const;
  std::string to_string() const;
};

struct TrendRow {
  int n = 0;
  int m = 0;
  bool exact = false;
  std::map<int, double> ell_distribution;  // ell -> probability
  double scaled_ell_median = 0;  // median(ell) m / n
  double scaled_k_median = 0;    // median(k) m^3 / n^3
  bool ell_in_window = true;
  bool k_in_window = true;
};

struct TrendOptions {
  SampleOptions sampling;
  int exact_limit = 30;  // stratified enumeration up to this n
  /// Heuristic stability window: within [ref/w, ref*w] of the first row.
  double window_factor = 4.0;
};

std::vector<TrendRow> structure_trend(const std::vector<int>& n_list, const MRule& rule, std::uint64_t count,
                                      std::uint64_t seed, const TrendOptions& opts = {});

}  // namespace sumfree
