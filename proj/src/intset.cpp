#include "sumfree/intset.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumfree {

IntSet::IntSet(int universe_bound) : bound_(universe_bound) {
  if (universe_bound < 0) throw std::invalid_argument("negative universe bound");
  words_.assign(word_count_for(universe_bound), 0);
}

IntSet::IntSet(int universe_bound, std::span<const int> members) : IntSet(universe_bound) {
  for (int x : members) {
    if (x < 1 || x > bound_) {
      throw std::out_of_range("element " + std::to_string(x) + " outside [1, " +
                              std::to_string(bound_) + "]");
    }
    words_[static_cast<std::size_t>(x) >> 6] |= std::uint64_t{1} << (x & 63);
  }
  recount();
}

IntSet IntSet::of(std::initializer_list<int> members) {
  return of(std::span<const int>(members.begin(), members.size()));
}

IntSet IntSet::of(std::span<const int> members) {
  int bound = 0;
  for (int x : members) bound = std::max(bound, x);
  return IntSet(bound, members);
}

IntSet IntSet::interval(int lo, int hi, int universe_bound) {
  IntSet s(universe_bound);
  lo = std::max(lo, 1);
  if (hi > universe_bound) throw std::out_of_range("interval exceeds universe");
  for (int x = lo; x <= hi; ++x) s.words_[static_cast<std::size_t>(x) >> 6] |= std::uint64_t{1} << (x & 63);
  s.recount();
  return s;
}

IntSet IntSet::odds(int n) {
  IntSet s(n);
  for (int x = 1; x <= n; x += 2) s.words_[static_cast<std::size_t>(x) >> 6] |= std::uint64_t{1} << (x & 63);
  s.recount();
  return s;
}

IntSet IntSet::from_mask(std::uint64_t mask, int universe_bound) {
  if (universe_bound > 63) throw std::invalid_argument("mask sets are limited to n <= 63");
  if ((mask & 1U) != 0 || (universe_bound < 63 && (mask >> (universe_bound + 1)) != 0)) {
    throw std::out_of_range("mask has bits outside [1, n]");
  }
  IntSet s(universe_bound);
  s.words_[0] = mask;
  s.recount();
  return s;
}

int IntSet::min() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return static_cast<int>(w * 64 + std::countr_zero(words_[w]));
  }
  throw std::domain_error("min of empty set");
}

int IntSet::max() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) return static_cast<int>(w * 64 + 63 - std::countl_zero(words_[w]));
  }
  throw std::domain_error("max of empty set");
}

std::vector<int> IntSet::members() const {
  std::vector<int> out;
  out.reserve(count_);
  for (int x : *this) out.push_back(x);
  return out;
}

std::uint64_t IntSet::to_mask() const {
  if (bound_ > 63) throw std::invalid_argument("mask sets are limited to n <= 63");
  return words_[0];
}

IntSet IntSet::with_bound(int universe_bound) const {
  if (!empty() && max() > universe_bound) throw std::out_of_range("bound would drop members");
  IntSet s(universe_bound);
  std::copy_n(words_.begin(), std::min(words_.size(), s.words_.size()), s.words_.begin());
  s.recount();
  return s;
}

IntSet IntSet::with(int x) const {
  IntSet s = x > bound_ ? with_bound(x) : *this;
  if (x < 1) throw std::out_of_range("elements must be positive");
  s.words_[static_cast<std::size_t>(x) >> 6] |= std::uint64_t{1} << (x & 63);
  s.recount();
  return s;
}

IntSet IntSet::unite(const IntSet& other) const {
  IntSet s = with_bound(std::max(bound_, other.bound_));
  for (std::size_t w = 0; w < other.words_.size(); ++w) s.words_[w] |= other.words_[w];
  s.recount();
  return s;
}

IntSet IntSet::minus(const IntSet& other) const {
  IntSet s = *this;
  for (std::size_t w = 0; w < std::min(s.words_.size(), other.words_.size()); ++w) {
    s.words_[w] &= ~other.words_[w];
  }
  s.recount();
  return s;
}

std::size_t IntSet::count_minus(const IntSet& other) const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t o = w < other.words_.size() ? other.words_[w] : 0;
    c += static_cast<std::size_t>(std::popcount(words_[w] & ~o));
  }
  return c;
}

std::string IntSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int x : *this) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + "}";
}

bool IntSet::operator==(const IntSet& o) const {
  std::size_t n = std::max(words_.size(), o.words_.size());
  for (std::size_t w = 0; w < n; ++w) {
    std::uint64_t a = w < words_.size() ? words_[w] : 0;
    std::uint64_t b = w < o.words_.size() ? o.words_[w] : 0;
    if (a != b) return false;
  }
  return true;
}

void IntSet::recount() {
  count_ = 0;
  for (auto w : words_) count_ += static_cast<std::size_t>(std::popcount(w));
}

}  // namespace sumfree
