#include "sumfree/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sumfree::oracle {

bool is_sum_free_triple_loop(const std::vector<int>& s, Convention conv) {
  for (int x : s) {
    for (int y : s) {
      if (x == y && !conv.allow_equal_summands) continue;
      for (int z : s) {
        if (x + y == z) return false;
      }
    }
  }
  return true;
}

std::uint64_t schur_edge_count(int n) {
  std::uint64_t count = 0;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      for (int z = 1; z <= n; ++z) {
        if (x < y && y < z && x + y == z) ++count;
      }
    }
  }
  return count;
}

int delta2(int n) {
  // Count edge incidences per pair by walking every edge.
  std::vector<int> codegree(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  auto at = [&](int a, int b) -> int& { return codegree[static_cast<std::size_t>(a * (n + 1) + b)]; };
  for (int x = 1; x <= n; ++x) {
    for (int y = x + 1; x + y <= n; ++y) {
      const int z = x + y;
      ++at(x, y);
      ++at(x, z);
      ++at(y, z);
    }
  }
  return codegree.empty() ? 0 : *std::max_element(codegree.begin(), codegree.end());
}

std::vector<int> sumset(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<int> out;
  for (int x : a) {
    for (int y : b) out.insert(x + y);
  }
  return {out.begin(), out.end()};
}

std::vector<std::int64_t> b_set(const std::vector<int>& s, Ratio delta) {
  const std::vector<int> ss_vec = sumset(s, s);
  const std::set<std::int64_t> ss(ss_vec.begin(), ss_vec.end());
  const auto [lo_it, hi_it] = std::minmax_element(s.begin(), s.end());
  std::vector<std::int64_t> out;
  // Wider than the documented window, to check that nothing outside it qualifies.
  for (std::int64_t y = *ss.begin() - *hi_it - 5; y <= *ss.rbegin() - *lo_it + 5; ++y) {
    std::int64_t escapes = 0;
    for (int x : s) escapes += ss.count(x + y) == 0 ? 1 : 0;
    if (static_cast<double>(escapes) <= delta.value() * static_cast<double>(s.size()) + 1e-12) out.push_back(y);
  }
  return out;
}

bool ap_cover_exists(const std::vector<int>& s, std::int64_t max_length) {
  const auto [lo_it, hi_it] = std::minmax_element(s.begin(), s.end());
  const std::int64_t lo = *lo_it, hi = *hi_it;
  if (hi == lo) return max_length >= 1;
  for (std::int64_t d = 1; d <= hi - lo; ++d) {
    for (std::int64_t first = lo - d * max_length; first <= lo; ++first) {
      const std::int64_t last = first + d * (max_length - 1);
      bool all = true;
      for (int x : s) {
        if (x < first || x > last || (x - first) % d != 0) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
  }
  return false;
}

namespace {

void count_parts(int remaining, int max_part, std::uint64_t& out) {
  if (remaining == 0) {
    ++out;
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) count_parts(remaining - p, p, out);
}

void count_distinct(int remaining, int below, int parts_left, std::uint64_t& out) {
  if (parts_left == 0) {
    out += remaining == 0 ? 1 : 0;
    return;
  }
  for (int p = std::min(remaining, below - 1); p >= 1; --p) count_distinct(remaining - p, p, parts_left - 1, out);
}

}  // namespace

std::uint64_t partitions(int k) {
  std::uint64_t out = 0;
  count_parts(k, k, out);
  return out;
}

std::uint64_t distinct_partitions(int k, int ell) {
  std::uint64_t out = 0;
  count_distinct(k, k + 1, ell, out);
  return out;
}

std::uint64_t distinct_partitions_any_size(int k) {
  // Subsets of {1..k} summing to k, by the classical 0/1 knapsack table.
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(k) + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= k; ++part) {
    for (int s = k; s >= part; --s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - part)];
  }
  return ways[static_cast<std::size_t>(k)];
}

JansonPlain janson(const JansonInput& in) {
  JansonPlain out;
  const double p = static_cast<double>(in.m) / static_cast<double>(in.ground_size);
  const std::size_t f = in.family.size();
  for (std::size_t i = 0; i < f; ++i) {
    out.mu += std::pow(p, static_cast<double>(in.family[i].size()));
    for (std::size_t j = 0; j < f; ++j) {
      if (i == j) continue;
      bool meet = false;
      std::size_t union_size = in.family[j].size();
      for (int v : in.family[i]) {
        if (in.family[j].contains(v)) meet = true;
        else ++union_size;
      }
      if (meet) out.delta += std::pow(p, static_cast<double>(union_size));
    }
  }
  return out;
}

}  // namespace sumfree::oracle
