#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sumfree/common.hpp"
#include "sumfree/intset.hpp"

namespace sumfree {

/// {a + b : a in A, b in B}, on universe bound A.bound + B.bound.
IntSet sumset(const IntSet& a, const IntSet& b);

/// max(S) - min(S); throws std::domain_error("undefined span") on an empty set.
int span(const IntSet& s);

/// |S+S| / |S|.
Ratio doubling(const IntSet& s);

/// Arithmetic progression {first, first + difference, ...} with `length` terms.
struct APCover {
  std::int64_t first = 0;
  std::int64_t difference = 1;
  std::int64_t length = 0;

  std::int64_t last() const { return first + difference * (length - 1); }
  bool contains(std::int64_t x) const {
    return x >= first && x <= last() && (x - first) % difference == 0;
  }
  friend bool operator==(const APCover&, const APCover&) = default;
};

/// Shortest progression containing S, when |S+S| <= 3|S| - 4; std::nullopt
/// otherwise. Throws std::invalid_argument when |S| < 3.
std::optional<APCover> freiman_cover(const IntSet& s);

/// Escape threshold delta * |S| for the translate set, delta in [0, 1).
struct BSetQuery {
  IntSet set;
  Ratio delta;
};

/// Integers y with |(S + y) \ (S + S)| <= delta |S|, ascending. May contain
/// values <= 0, so the result is not an IntSet.
std::vector<std::int64_t> b_set(const BSetQuery& q);

}  // namespace sumfree
