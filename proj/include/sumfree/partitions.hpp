#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sumfree/common.hpp"

namespace sumfree {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Unrestricted partition count p(k).
BigCount partition_count(int k);

/// Number of ell-element sets of distinct positive integers summing to k.
BigCount distinct_partition_count(int k, int ell);

/// Table q[k][ell] of distinct_partition_count for k <= max_k, ell <= max_ell.
std::vector<std::vector<BigCount>> distinct_partition_table(int max_k, int max_ell);

struct PartitionQuery {
  int k = 0;
  int ell = 0;
  std::optional<int> sumset_cap;    // max |S+S|
  std::optional<int> universe_cap;  // max part
};

/// Visits every ell-set of distinct parts summing to k (parts <= max_part),
/// largest part first; the span lists parts in descending order.
void for_each_distinct_partition(int k, int ell, int max_part,
                                 const std::function<void(std::span<const int>)>& visit);

/// Exact count of the query's sets, by enumerate-and-filter. Throws
/// BudgetExceeded when p*_ell(k) exceeds the budget.
BigCount count_restricted(const PartitionQuery& q, std::uint64_t budget = kDefaultBudget);
BigCount count_restricted_serial(const PartitionQuery& q, std::uint64_t budget = kDefaultBudget);

/// m-subsets of [n] with |S+S| <= cap. Throws BudgetExceeded when
/// binom(n, m) exceeds the budget.
BigCount count_small_sumset_sets(int n, int m, int cap, std::uint64_t budget = kDefaultBudget);

/// |S+S| for a small set of positive parts.
int sumset_size(std::span<const int> parts);

}  // namespace sumfree
