#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumfree/common.hpp"
#include "sumfree/intset.hpp"

namespace sumfree {

/// Whether x + x = z counts as a violation of sum-freeness.
struct Convention {
  bool allow_equal_summands = true;

  static Convention equal_summands() { return {true}; }
  static Convention distinct_summands() { return {false}; }

  std::string_view name() const { return allow_equal_summands ? "equal" : "distinct"; }
  static Convention parse(std::string_view name);
  friend bool operator==(const Convention&, const Convention&) = default;
};

bool is_sum_free(const IntSet& s, Convention conv = {});

/// Fast path over a bitmask (bit x = element x), used by the search kernels.
inline bool is_sum_free_mask(std::uint64_t s, Convention conv = {}) {
  for (std::uint64_t rest = s; rest != 0; rest &= rest - 1) {
    int x = std::countr_zero(rest);
    std::uint64_t others = conv.allow_equal_summands ? s : (s & ~(std::uint64_t{1} << x));
    if (((others << x) & s) != 0) return false;
  }
  return true;
}

/// Unordered distinct-element Schur triple x < y < z = x + y.
struct SchurTriple {
  int x, y, z;
  friend bool operator==(const SchurTriple&, const SchurTriple&) = default;
};

/// Calls visit for every edge of the Schur hypergraph on [n], ordered by (x, y).
void for_each_schur_edge(int n, const std::function<void(const SchurTriple&)>& visit);
std::vector<SchurTriple> schur_edges(int n);
/// floor((n-1)^2 / 4), the number of edges.
std::uint64_t schur_edge_count(int n);

/// Maximum number of edges through a pair of vertices.
int delta2(int n);
int delta2_serial(int n);

/// Per-set statistics. k and a live on the half-integer grid, so twice their
/// value is stored.
struct Statistics {
  int m = 0;
  int ell = 0;
  std::int64_t twice_k = 0;
  std::optional<std::int64_t> twice_a;  // empty when S(I) is empty
  bool odd_flag = false;

  double k() const { return static_cast<double>(twice_k) / 2.0; }
  std::optional<double> a() const {
    if (!twice_a) return std::nullopt;
    return static_cast<double>(*twice_a) / 2.0;
  }
  friend bool operator==(const Statistics&, const Statistics&) = default;
};

/// Renders a twice-stored half-integer ("4", "4.5").
std::string half_integer_string(std::int64_t twice);

Statistics statistics_of(const IntSet& set, int n);

/// Green's family: intervals {a+1..a+ceil(n/2)} for 0 <= a <= floor(n/2), then O_n.
std::vector<IntSet> extremal_family(int n);

struct StabilityProfile {
  BigCount schur_triples;
  int min_escape = 0;
};

StabilityProfile stability_profile(const IntSet& a, int n);

}  // namespace sumfree
