#include "sumfree/partitions.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sumfree {

BigCount partition_count(int k) {
  if (k < 0) throw std::invalid_argument("p(k) needs k >= 0");
  std::vector<BigCount> p(static_cast<std::size_t>(k) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= k; ++part) {
    for (int s = part; s <= k; ++s) p[static_cast<std::size_t>(s)] += p[static_cast<std::size_t>(s - part)];
  }
  return p[static_cast<std::size_t>(k)];
}

std::vector<std::vector<BigCount>> distinct_partition_table(int max_k, int max_ell) {
  if (max_k < 0 || max_ell < 0) throw std::invalid_argument("negative table size");
  std::vector<std::vector<BigCount>> q(static_cast<std::size_t>(max_k) + 1,
                                       std::vector<BigCount>(static_cast<std::size_t>(max_ell) + 1, 0));
  q[0][0] = 1;
  // Lower every part by one; a part equal to 1 disappears.
  for (int k = 1; k <= max_k; ++k) {
    for (int ell = 1; ell <= std::min(k, max_ell); ++ell) {
      auto& cell = q[static_cast<std::size_t>(k)][static_cast<std::size_t>(ell)];
      const auto& row = q[static_cast<std::size_t>(k - ell)];
      cell = row[static_cast<std::size_t>(ell)] + row[static_cast<std::size_t>(ell - 1)];
    }
  }
  return q;
}

BigCount distinct_partition_count(int k, int ell) {
  if (k < 0 || ell < 0) throw std::invalid_argument("p*_ell(k) needs k, ell >= 0");
  if (ell > k && !(k == 0 && ell == 0)) return 0;
  return distinct_partition_table(k, ell)[static_cast<std::size_t>(k)][static_cast<std::size_t>(ell)];
}

int sumset_size(std::span<const int> parts) {
  if (parts.empty()) return 0;
  int hi = *std::max_element(parts.begin(), parts.end());
  thread_local std::vector<std::uint64_t> seen;
  const std::size_t words = static_cast<std::size_t>(2 * hi) / 64 + 1;
  seen.assign(words, 0);
  int count = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i; j < parts.size(); ++j) {
      auto t = static_cast<std::size_t>(parts[i] + parts[j]);
      std::uint64_t bit = std::uint64_t{1} << (t & 63);
      if ((seen[t >> 6] & bit) == 0) {
        seen[t >> 6] |= bit;
        ++count;
      }
    }
  }
  return count;
}

namespace {

// Parts are chosen in descending order into `parts[depth..]`.
template <typename Visit>
void descend(int remaining_sum, int remaining_parts, int below, std::vector<int>& parts, Visit& visit) {
  if (remaining_parts == 0) {
    if (remaining_sum == 0) visit(std::span<const int>(parts));
    return;
  }
  const int r = remaining_parts - 1;
  // The r parts below `a` sum to at least r(r+1)/2 and at most r*a - r(r+1)/2.
  const int tri = r * (r + 1) / 2;
  int top = std::min(below - 1, remaining_sum - tri);
  for (int a = top; a >= 1; --a) {
    if (r * a - tri < remaining_sum - a) break;
    parts.push_back(a);
    descend(remaining_sum - a, r, a, parts, visit);
    parts.pop_back();
  }
}

void check_budget(const PartitionQuery& q, std::uint64_t budget) {
  if (q.k < 0 || q.ell < 0) throw std::invalid_argument("k and ell must be nonnegative");
  BigCount candidates = distinct_partition_count(q.k, q.ell);
  if (candidates > BigCount(static_cast<unsigned long>(budget))) {
    throw BudgetExceeded("instance too large for exact enumeration", candidates);
  }
}

std::uint64_t count_with_largest(const PartitionQuery& q, int largest) {
  std::uint64_t hits = 0;
  std::vector<int> parts{largest};
  auto visit = [&](std::span<const int> s) {
    if (!q.sumset_cap || sumset_size(s) <= *q.sumset_cap) ++hits;
  };
  descend(q.k - largest, q.ell - 1, largest, parts, visit);
  return hits;
}

int largest_part_limit(const PartitionQuery& q) {
  int limit = q.k;
  if (q.universe_cap) limit = std::min(limit, *q.universe_cap);
  return limit;
}

}  // namespace

void for_each_distinct_partition(int k, int ell, int max_part,
                                 const std::function<void(std::span<const int>)>& visit) {
  if (k < 0 || ell < 0) throw std::invalid_argument("k and ell must be nonnegative");
  std::vector<int> parts;
  descend(k, ell, max_part + 1, parts, visit);
}

BigCount count_restricted_serial(const PartitionQuery& q, std::uint64_t budget) {
  check_budget(q, budget);
  if (q.ell == 0) return (q.k == 0 && (!q.sumset_cap || *q.sumset_cap >= 0)) ? 1 : 0;
  std::uint64_t total = 0;
  for (int a = largest_part_limit(q); a >= 1; --a) total += count_with_largest(q, a);
  return BigCount(static_cast<unsigned long>(total));
}

BigCount count_restricted(const PartitionQuery& q, std::uint64_t budget) {
  check_budget(q, budget);
  if (q.ell == 0) return (q.k == 0 && (!q.sumset_cap || *q.sumset_cap >= 0)) ? 1 : 0;
  const int limit = largest_part_limit(q);
  std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic)
  for (int a = 1; a <= limit; ++a) total += count_with_largest(q, a);
  return BigCount(static_cast<unsigned long>(total));
}

namespace {

struct SmallSumsetSearch {
  int n;
  int m;
  int cap;
  std::uint64_t hits = 0;
  std::vector<int> chosen;

  // `sums` is the sumset bitmap of `chosen`; `size` its popcount.
  void run(int next, std::vector<std::uint64_t>& sums, int size) {
    if (static_cast<int>(chosen.size()) == m) {
      ++hits;
      return;
    }
    const int need = m - static_cast<int>(chosen.size());
    for (int x = next; x <= n - need + 1; ++x) {
      std::vector<std::uint64_t> grown = sums;
      int grown_size = size;
      auto add = [&](int t) {
        std::uint64_t bit = std::uint64_t{1} << (t & 63);
        auto& w = grown[static_cast<std::size_t>(t) >> 6];
        if ((w & bit) == 0) {
          w |= bit;
          ++grown_size;
        }
      };
      add(2 * x);
      for (int y : chosen) add(x + y);
      if (grown_size > cap) continue;
      chosen.push_back(x);
      run(x + 1, grown, grown_size);
      chosen.pop_back();
    }
  }
};

}  // namespace

BigCount count_small_sumset_sets(int n, int m, int cap, std::uint64_t budget) {
  if (n < 1 || m < 0) throw std::invalid_argument("need n >= 1 and m >= 0");
  BigCount candidates = binomial(n, m);
  if (candidates > BigCount(static_cast<unsigned long>(budget))) {
    throw BudgetExceeded("instance too large for exact enumeration", candidates);
  }
  if (m > n) return 0;
  SmallSumsetSearch search{n, m, cap, 0, {}};
  std::vector<std::uint64_t> sums(static_cast<std::size_t>(2 * n) / 64 + 1, 0);
  search.run(1, sums, 0);
  return BigCount(static_cast<unsigned long>(search.hits));
}

}  // namespace sumfree
