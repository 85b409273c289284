#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "sumfree/common.hpp"
#include "sumfree/core.hpp"
#include "sumfree/intset.hpp"

namespace sumfree {

/// Largest n handled by the bitmask search.
inline constexpr int kMaxSearchN = 63;
/// Largest universe the 2^|U| oracle accepts.
inline constexpr int kMaxOracleUniverse = 24;
inline constexpr std::uint64_t kDefaultNodeBudget = 2'000'000'000;

/// Statistics fields a count can be split by.
enum StrataField : unsigned {
  kStrataNone = 0,
  kStrataEll = 1U << 0,
  kStrataK = 1U << 1,
  kStrataA = 1U << 2,
  kStrataOdd = 1U << 3,
};

/// Projection of Statistics onto the requested fields; unrequested fields
/// hold kUnprojected.
struct StrataKey {
  static constexpr std::int64_t kUnprojected = -2;
  static constexpr std::int64_t kUndefined = -1;  // a(I) with S(I) empty

  int size = 0;
  std::int64_t ell = kUnprojected;
  std::int64_t twice_k = kUnprojected;
  std::int64_t twice_a = kUnprojected;
  std::int64_t odd = kUnprojected;

  static StrataKey project(const Statistics& st, unsigned fields);
  auto operator<=>(const StrataKey&) const = default;
};

struct CountQuery {
  int n = 0;
  std::optional<int> m;
  std::optional<IntSet> universe;  // defaults to [n]
  Convention convention;
  unsigned stratify = kStrataNone;
};

enum class CountMethod { oracle, backtracking };

struct CountResult {
  BigCount total = 0;
  std::map<int, BigCount> by_size;
  std::map<StrataKey, BigCount> strata;
  CountMethod method = CountMethod::backtracking;
  std::chrono::nanoseconds elapsed{0};
};

struct SearchOptions {
  int threads = 0;  // 0: OpenMP default
  std::uint64_t node_budget = kDefaultNodeBudget;
};

/// Ground truth: every subset of the universe, filtered by is_sum_free.
CountResult count_oracle(const CountQuery& q);

/// Pruned descending backtracking, single thread.
CountResult count_sum_free_serial(const CountQuery& q, const SearchOptions& opts = {});

/// Same search split into independent prefix tasks run under OpenMP.
CountResult count_sum_free(const CountQuery& q, const SearchOptions& opts = {});

struct WindowCount {
  int a = 0;
  IntSet universe;
  BigCount count;
  BigCount subsets;  // binom(|universe|, m)
  double probability = 0.0;
};

/// The window {floor(n/2)+1-a, ..., n}: ceil(n/2) + a elements.
IntSet window_universe(int n, int a);
WindowCount count_in_window(int n, int a, int m, const SearchOptions& opts = {});

/// Streams sum-free sets in descending-choice order. Throws BudgetExceeded
/// before emitting anything when more than stream_budget sets would be produced.
void enumerate_sum_free(const CountQuery& q, const std::function<void(const IntSet&)>& emit,
                        std::uint64_t stream_budget = 1'000'000, const SearchOptions& opts = {});

struct StrataCell {
  int ell = 0;
  std::int64_t twice_k = 0;
  friend auto operator<=>(const StrataCell&, const StrataCell&) = default;
};

struct StratifiedCounts {
  int n = 0;
  int m = 0;
  BigCount total;
  std::map<StrataCell, BigCount> joint;     // every sum-free m-set
  std::map<StrataCell, BigCount> odd_only;  // the I subset of O_n class
};

StratifiedCounts stratified_counts(int n, int m, Convention conv = {}, const SearchOptions& opts = {});

std::string to_string(CountMethod m);

}  // namespace sumfree
