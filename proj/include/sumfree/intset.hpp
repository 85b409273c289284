#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace sumfree {

/// Finite set of positive integers {1..universe_bound}, stored as a bitmap.
///
/// Bit x of the bitmap is element x (bit 0 is never set). Values are
/// immutable once built; all factories validate that members lie in range.
class IntSet {
 public:
  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    const_iterator() = default;
    const_iterator(const std::vector<std::uint64_t>* words, std::size_t word,
                   std::uint64_t rest)
        : words_(words), word_(word), rest_(rest) {
      settle();
    }

    int operator*() const {
      return static_cast<int>(word_ * 64 + std::countr_zero(rest_));
    }
    const_iterator& operator++() {
      rest_ &= rest_ - 1;
      settle();
      return *this;
    }
    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const const_iterator& o) const {
      return word_ == o.word_ && rest_ == o.rest_;
    }

   private:
    void settle() {
      while (rest_ == 0 && words_ != nullptr && word_ + 1 < words_->size()) {
        ++word_;
        rest_ = (*words_)[word_];
      }
      if (rest_ == 0 && words_ != nullptr) word_ = words_->size();
    }

    const std::vector<std::uint64_t>* words_ = nullptr;
    std::size_t word_ = 0;
    std::uint64_t rest_ = 0;
  };

  IntSet() : IntSet(0) {}
  explicit IntSet(int universe_bound);
  IntSet(int universe_bound, std::span<const int> members);
  IntSet(int universe_bound, std::initializer_list<int> members)
      : IntSet(universe_bound, std::span<const int>(members.begin(), members.size())) {}

  /// Bound taken as the largest member.
  static IntSet of(std::initializer_list<int> members);
  static IntSet of(std::span<const int> members);
  /// {lo..hi} inside universe {1..universe_bound}; empty when lo > hi.
  static IntSet interval(int lo, int hi, int universe_bound);
  /// Odd numbers in {1..n}.
  static IntSet odds(int n);
  /// Bit x of mask is element x; requires universe_bound <= 63.
  static IntSet from_mask(std::uint64_t mask, int universe_bound);

  int universe_bound() const { return bound_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(int x) const {
    return x >= 1 && x <= bound_ && ((words_[static_cast<std::size_t>(x) >> 6] >> (x & 63)) & 1U);
  }

  /// Throws std::domain_error on an empty set.
  int min() const;
  int max() const;

  std::vector<int> members() const;
  std::uint64_t to_mask() const;  // requires universe_bound <= 63
  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Same members, new bound (must still hold every member).
  IntSet with_bound(int universe_bound) const;
  IntSet with(int x) const;
  IntSet unite(const IntSet& other) const;
  IntSet minus(const IntSet& other) const;
  std::size_t count_minus(const IntSet& other) const;

  const_iterator begin() const { return const_iterator(&words_, 0, words_.empty() ? 0 : words_[0]); }
  const_iterator end() const { return const_iterator(&words_, words_.size(), 0); }

  std::string to_string() const;

  bool operator==(const IntSet& o) const;

 private:
  void recount();

  int bound_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t word_count_for(int universe_bound) {
  return static_cast<std::size_t>(universe_bound) / 64 + 1;
}

}  // namespace sumfree
