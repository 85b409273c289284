#include <doctest.h>

#include <random>

#include "sumfree/oracles.hpp"
#include "sumfree/sumsets.hpp"

using namespace sumfree;

TEST_SUITE("sumsets") {
  TEST_CASE("sumset examples") {
    const IntSet s = sumset(IntSet::of({1, 2, 3}), IntSet::of({1, 2, 3}));
    CHECK(s.to_string() == "{2,3,4,5,6}");
    CHECK(sumset(IntSet::of({5}), IntSet::of({7})).to_string() == "{12}");
    const IntSet t = sumset(IntSet::of({1, 2, 4}), IntSet::of({1, 2, 4}));
    CHECK(t.to_string() == "{2,3,4,5,6,8}");
  }

  TEST_CASE("sumset matches a std::set double loop") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 500; ++rep) {
      std::vector<int> a, b;
      for (int x = 1; x <= 150; ++x) {
        if (rng() % 13 == 0) a.push_back(x);
        if (rng() % 17 == 0) b.push_back(x);
      }
      REQUIRE(sumset(IntSet::of(std::span<const int>(a)), IntSet::of(std::span<const int>(b))).members() ==
              oracle::sumset(a, b));
    }
  }

  TEST_CASE("span and doubling") {
    CHECK(span(IntSet::of({1, 4})) == 3);
    CHECK(span(sumset(IntSet::of({1, 4}), IntSet::of({1, 4}))) == 6);
    CHECK(span(IntSet::of({7})) == 0);
    CHECK_THROWS_AS(span(IntSet(3)), std::domain_error);
    CHECK(doubling(IntSet::interval(1, 10, 10)) == Ratio(19, 10));
    CHECK(doubling(IntSet::of({4})) == Ratio(1));
    // the 15 sums 2^i + 2^j (i <= j) are all distinct
    CHECK(doubling(IntSet::of({1, 2, 4, 8, 16})) == Ratio(3));
  }

  TEST_CASE("b_set examples") {
    const auto b = b_set({IntSet::of({1, 2, 3}), Ratio(0)});
    CHECK(b == std::vector<std::int64_t>{1, 2, 3});
    CHECK(b_set({IntSet::of({5}), Ratio(0)}) == std::vector<std::int64_t>{5});
    const IntSet s = IntSet::of({1, 2, 4, 8});
    const auto quarter = b_set({s, Ratio(1, 4)});
    const auto ss = static_cast<std::int64_t>(sumset(s, s).size());
    CHECK(static_cast<std::int64_t>(quarter.size()) * 3 <= ss * 4);
  }

  TEST_CASE("b_set agrees with a wider brute-force scan") {
    std::mt19937_64 rng(5);
    const Ratio deltas[] = {Ratio(0), Ratio(1, 4), Ratio(1, 2), Ratio(2, 3)};
    for (int rep = 0; rep < 400; ++rep) {
      std::vector<int> v;
      for (int x = 1; x <= 40; ++x) {
        if (rng() % 6 == 0) v.push_back(x);
      }
      if (v.empty()) v.push_back(1);
      const Ratio d = deltas[rep % 4];
      REQUIRE(b_set({IntSet::of(std::span<const int>(v)), d}) == oracle::b_set(v, d));
    }
  }

  TEST_CASE("freiman cover examples") {
    const auto c = freiman_cover(IntSet::of({1, 2, 3, 5}));
    REQUIRE(c);
    CHECK(c->length <= 5);
    for (int x : {1, 2, 3, 5}) CHECK(c->contains(x));

    const auto ap = freiman_cover(IntSet::of({3, 5, 7, 9}));
    REQUIRE(ap);
    CHECK(*ap == APCover{3, 2, 4});

    CHECK_FALSE(freiman_cover(IntSet::of({1, 2, 3, 10})));
    CHECK_THROWS_AS(freiman_cover(IntSet::of({1, 2})), std::invalid_argument);
  }

  TEST_CASE("freiman cover is no longer than the brute-force optimum") {
    std::mt19937_64 rng(21);
    int tried = 0;
    while (tried < 200) {
      std::vector<int> v;
      const int d = 1 + static_cast<int>(rng() % 3);
      const int start = 1 + static_cast<int>(rng() % 10);
      for (int i = 0; i < 9; ++i) {
        if (rng() % 3 != 0) v.push_back(start + d * i);
      }
      if (v.size() < 3) continue;
      const IntSet s = IntSet::of(std::span<const int>(v));
      const auto cover = freiman_cover(s);
      if (!cover) continue;
      ++tried;
      REQUIRE(oracle::ap_cover_exists(v, cover->length));
      REQUIRE_FALSE(oracle::ap_cover_exists(v, cover->length - 1));
    }
  }
}
