#include <doctest.h>

#include "sumfree/intset.hpp"

using sumfree::IntSet;

TEST_SUITE("core") {
  TEST_CASE("intset basics") {
    const IntSet s(10, {3, 1, 7});
    CHECK(s.size() == 3);
    CHECK(s.contains(1));
    CHECK_FALSE(s.contains(2));
    CHECK(s.min() == 1);
    CHECK(s.max() == 7);
    CHECK(s.to_string() == "{1,3,7}");
    CHECK(s.members() == std::vector<int>{1, 3, 7});
    CHECK(IntSet::from_mask(s.to_mask(), 10) == s);
  }

  TEST_CASE("intset spans several words") {
    IntSet s(200, {1, 64, 65, 128, 200});
    CHECK(s.size() == 5);
    CHECK(s.max() == 200);
    int prev = 0;
    for (int x : s) {
      CHECK(x > prev);
      prev = x;
    }
    CHECK(s.minus(IntSet(200, {64, 200})).to_string() == "{1,65,128}");
  }

  TEST_CASE("intset rejects bad input") {
    CHECK_THROWS_AS(IntSet(5, {6}), std::out_of_range);
    CHECK_THROWS_AS(IntSet(5, {0}), std::out_of_range);
    CHECK_THROWS_AS(IntSet(5).min(), std::domain_error);
    CHECK_THROWS_AS(IntSet::from_mask(1, 80), std::invalid_argument);
  }

  TEST_CASE("interval and odds") {
    CHECK(IntSet::interval(6, 10, 10).to_string() == "{6,7,8,9,10}");
    CHECK(IntSet::odds(9).to_string() == "{1,3,5,7,9}");
  }
}
