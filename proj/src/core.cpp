#include "sumfree/core.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sumfree {

Convention Convention::parse(std::string_view name) {
  if (name == "equal") return equal_summands();
  if (name == "distinct") return distinct_summands();
  throw std::invalid_argument("unknown convention '" + std::string(name) + "' (equal|distinct)");
}

bool is_sum_free(const IntSet& s, Convention conv) {
  if (s.universe_bound() <= 63) return is_sum_free_mask(s.to_mask(), conv);
  // x + y = z  <=>  bit z of (S << x) is set; shift word-wise.
  const auto& words = s.words();
  const std::size_t nw = words.size();
  for (int x : s) {
    const std::size_t ws = static_cast<std::size_t>(x) >> 6;
    const int bs = x & 63;
    for (std::size_t w = ws; w < nw; ++w) {
      std::uint64_t lo = words[w - ws] << bs;
      std::uint64_t hi = (bs != 0 && w - ws >= 1) ? (words[w - ws - 1] >> (64 - bs)) : 0;
      std::uint64_t shifted = lo | hi;
      if (!conv.allow_equal_summands) {
        // Drop the contribution of y = x, which lands on bit 2x.
        int twice = 2 * x;
        if (static_cast<std::size_t>(twice) >> 6 == w) shifted &= ~(std::uint64_t{1} << (twice & 63));
      }
      if ((shifted & words[w]) != 0) return false;
    }
  }
  return true;
}

void for_each_schur_edge(int n, const std::function<void(const SchurTriple&)>& visit) {
  for (int x = 1; x <= n; ++x) {
    for (int y = x + 1; x + y <= n; ++y) visit({x, y, x + y});
  }
}

std::vector<SchurTriple> schur_edges(int n) {
  std::vector<SchurTriple> out;
  out.reserve(schur_edge_count(n));
  for_each_schur_edge(n, [&](const SchurTriple& t) { out.push_back(t); });
  return out;
}

std::uint64_t schur_edge_count(int n) {
  if (n < 1) return 0;
  auto k = static_cast<std::uint64_t>(n - 1);
  return k * k / 4;
}

namespace {

// Edges through {x, y}, x < y: {x, y, x+y} when x + y <= n, and {y-x, x, y}
// when y - x differs from x.
inline int pair_codegree(int x, int y, int n) {
  return static_cast<int>(x + y <= n) + static_cast<int>(y != 2 * x);
}

}  // namespace

int delta2_serial(int n) {
  int best = 0;
  for (int x = 1; x <= n; ++x) {
    for (int y = x + 1; y <= n; ++y) best = std::max(best, pair_codegree(x, y, n));
  }
  return best;
}

int delta2(int n) {
  int best = 0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (int x = 1; x <= n; ++x) {
    for (int y = x + 1; y <= n; ++y) best = std::max(best, pair_codegree(x, y, n));
  }
  return best;
}

std::string half_integer_string(std::int64_t twice) {
  std::string sign = twice < 0 ? "-" : "";
  std::int64_t mag = twice < 0 ? -twice : twice;
  std::string out = sign + std::to_string(mag / 2);
  if (mag % 2 != 0) out += ".5";
  return out;
}

Statistics statistics_of(const IntSet& set, int n) {
  if (!set.empty() && set.max() > n) throw std::out_of_range("set exceeds [n]");
  Statistics st;
  st.m = static_cast<int>(set.size());
  st.odd_flag = true;
  for (int x : set) {
    if (x % 2 == 0) st.odd_flag = false;
    if (2 * x <= n) {
      ++st.ell;
      st.twice_k += n - 2 * x;
      if (!st.twice_a) st.twice_a = n - 2 * x;  // ascending: first low element is min(S(I))
    }
  }
  return st;
}

std::vector<IntSet> extremal_family(int n) {
  std::vector<IntSet> out;
  const int half_up = (n + 1) / 2;
  for (int a = 0; a <= n / 2; ++a) out.push_back(IntSet::interval(a + 1, a + half_up, n));
  out.push_back(IntSet::odds(n));
  return out;
}

StabilityProfile stability_profile(const IntSet& a, int n) {
  if (!a.empty() && a.max() > n) throw std::out_of_range("set exceeds [n]");
  StabilityProfile out;
  const IntSet set = a.with_bound(n);
  std::uint64_t triples = 0;
  for (int x : set) {
    for (int y : set) {
      if (y <= x) continue;
      if (x + y > n) break;
      if (set.contains(x + y)) ++triples;
    }
  }
  out.schur_triples = BigCount(static_cast<unsigned long>(triples));
  out.min_escape = std::numeric_limits<int>::max();
  for (const auto& b : extremal_family(n)) {
    out.min_escape = std::min(out.min_escape, static_cast<int>(set.count_minus(b)));
  }
  return out;
}

}  // namespace sumfree
