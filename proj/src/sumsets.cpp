#include "sumfree/sumsets.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sumfree {

IntSet sumset(const IntSet& a, const IntSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("sumset of an empty set");
  const int bound = a.universe_bound() + b.universe_bound();
  IntSet out(bound);
  // OR-accumulate B shifted by each a; same word-shift as the predicate.
  const auto& bw = b.words();
  std::vector<std::uint64_t> acc(word_count_for(bound), 0);
  for (int x : a) {
    const std::size_t ws = static_cast<std::size_t>(x) >> 6;
    const int bs = x & 63;
    for (std::size_t i = 0; i < bw.size(); ++i) {
      if (bw[i] == 0) continue;
      acc[i + ws] |= bw[i] << bs;
      if (bs != 0 && i + ws + 1 < acc.size()) acc[i + ws + 1] |= bw[i] >> (64 - bs);
    }
  }
  std::vector<int> members;
  for (std::size_t w = 0; w < acc.size(); ++w) {
    for (std::uint64_t rest = acc[w]; rest != 0; rest &= rest - 1) {
      members.push_back(static_cast<int>(w * 64 + std::countr_zero(rest)));
    }
  }
  return IntSet(bound, members);
}

int span(const IntSet& s) {
  if (s.empty()) throw std::domain_error("undefined span");
  return s.max() - s.min();
}

Ratio doubling(const IntSet& s) {
  if (s.empty()) throw std::invalid_argument("doubling of an empty set");
  return Ratio(static_cast<std::int64_t>(sumset(s, s).size()), static_cast<std::int64_t>(s.size()));
}

std::optional<APCover> freiman_cover(const IntSet& s) {
  if (s.size() < 3) throw std::invalid_argument("too small for 3k-4 regime");
  const auto k = static_cast<std::int64_t>(s.size());
  const auto doubled = static_cast<std::int64_t>(sumset(s, s).size());
  if (doubled > 3 * k - 4) return std::nullopt;

  // Normal form: translate to min 0 and divide by the gcd of differences.
  const std::vector<int> elems = s.members();
  const int lo = elems.front();
  int g = 0;
  for (int x : elems) g = std::gcd(g, x - lo);

  // Scan differences in normalized coordinates; a progression of difference d
  // through every element needs d | (x - lo) for all x, so only d = 1 fits
  // once the gcd is divided out. The scan keeps the contract explicit.
  const int normalized_span = (elems.back() - lo) / g;
  std::optional<APCover> best;
  for (int d = 1; d <= std::max(normalized_span, 1); ++d) {
    bool fits = true;
    for (int x : elems) {
      if (((x - lo) / g) % d != 0) {
        fits = false;
        break;
      }
    }
    if (!fits) continue;
    APCover c{lo, static_cast<std::int64_t>(g) * d, normalized_span / d + 1};
    if (!best || c.length < best->length) best = c;
  }
  return best;
}

std::vector<std::int64_t> b_set(const BSetQuery& q) {
  const IntSet& s = q.set;
  if (s.empty()) throw std::invalid_argument("b_set of an empty set");
  if (q.delta.num < 0 || q.delta.num >= q.delta.den) throw std::invalid_argument("delta must lie in [0, 1)");
  const IntSet ss = sumset(s, s);
  const std::int64_t lo = ss.min() - s.max();
  const std::int64_t hi = ss.max() - s.min();
  const auto size = static_cast<std::int64_t>(s.size());
  const std::vector<int> elems = s.members();

  std::vector<std::int64_t> out;
  for (std::int64_t y = lo; y <= hi; ++y) {
    std::int64_t escapes = 0;
    for (int x : elems) {
      const std::int64_t t = x + y;
      if (t < 1 || t > ss.universe_bound() || !ss.contains(static_cast<int>(t))) ++escapes;
    }
    // escapes <= delta * |S|, exactly
    if (escapes * q.delta.den <= q.delta.num * size) out.push_back(y);
  }
  return out;
}

}  // namespace sumfree
