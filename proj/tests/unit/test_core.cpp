#include <doctest.h>

#include <random>

#include "sumfree/core.hpp"
#include "sumfree/oracles.hpp"

using namespace sumfree;

TEST_SUITE("core") {
  TEST_CASE("is_sum_free examples") {
    CHECK(is_sum_free(IntSet::of({1, 3, 5, 7})));
    CHECK(is_sum_free(IntSet(0)));
    CHECK_FALSE(is_sum_free(IntSet::of({1, 2})));
    CHECK(is_sum_free(IntSet::of({1, 2}), Convention::distinct_summands()));
    CHECK(is_sum_free(IntSet::interval(6, 10, 10)));
  }

  TEST_CASE("is_sum_free matches the triple loop on every subset of [n], n <= 16") {
    for (Convention conv : {Convention::equal_summands(), Convention::distinct_summands()}) {
      for (int n = 1; n <= 16; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
          const IntSet s = IntSet::from_mask(mask << 1, n);
          REQUIRE(is_sum_free(s, conv) == oracle::is_sum_free_triple_loop(s.members(), conv));
        }
      }
    }
  }

  TEST_CASE("wide sets use the word path") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 300; ++rep) {
      const int n = 64 + static_cast<int>(rng() % 200);
      std::vector<int> v;
      for (int x = 1; x <= n; ++x) {
        if (rng() % 9 == 0) v.push_back(x);
      }
      const IntSet s(n, v);
      for (Convention conv : {Convention::equal_summands(), Convention::distinct_summands()}) {
        REQUIRE(is_sum_free(s, conv) == oracle::is_sum_free_triple_loop(v, conv));
      }
    }
    CHECK(is_sum_free(IntSet::odds(301)));
    CHECK(is_sum_free(IntSet::interval(151, 300, 300)));
  }

  TEST_CASE("schur edges") {
    const auto e4 = schur_edges(4);
    REQUIRE(e4.size() == 2);
    CHECK(e4[0] == SchurTriple{1, 2, 3});
    CHECK(e4[1] == SchurTriple{1, 3, 4});
    CHECK(schur_edges(2).empty());
    CHECK(schur_edge_count(6) == 6);
    for (int n = 1; n <= 120; ++n) {
      REQUIRE(schur_edge_count(n) == oracle::schur_edge_count(n));
      REQUIRE(schur_edges(n).size() == schur_edge_count(n));
    }
    for (const auto& t : schur_edges(30)) {
      CHECK(t.x < t.y);
      CHECK(t.x + t.y == t.z);
    }
  }

  TEST_CASE("max codegree") {
    CHECK(delta2(10) == 2);
    CHECK(delta2(2) == 0);
    CHECK(delta2(100) == 2);
    for (int n = 1; n <= 60; ++n) REQUIRE(delta2(n) == oracle::delta2(n));
    for (int n = 4; n <= 2000; n += 37) {
      REQUIRE(delta2(n) == 2);
      REQUIRE(delta2_serial(n) == 2);
    }
  }

  TEST_CASE("statistics examples") {
    const Statistics a = statistics_of(IntSet::of({1, 3, 5, 7}), 8);
    CHECK(a.m == 4);
    CHECK(a.ell == 2);
    CHECK(a.k() == 4.0);
    REQUIRE(a.a());
    CHECK(*a.a() == 3.0);
    CHECK(a.odd_flag);

    const Statistics b = statistics_of(IntSet::interval(6, 10, 10), 10);
    CHECK(b.ell == 0);
    CHECK(b.twice_k == 0);
    CHECK_FALSE(b.a());
    CHECK_FALSE(b.odd_flag);

    const Statistics c = statistics_of(IntSet::of({4, 9, 10}), 10);
    CHECK(c.ell == 1);
    CHECK(c.k() == 1.0);
    CHECK(*c.a() == 1.0);
  }

  TEST_CASE("odd n gives half-integer statistics") {
    const Statistics s = statistics_of(IntSet::of({1, 8}), 9);
    CHECK(s.twice_k == 7);
    CHECK(half_integer_string(s.twice_k) == "3.5");
    CHECK(half_integer_string(8) == "4");
  }

  TEST_CASE("k vanishes exactly when S(I) lies in {n/2}") {
    for (int n = 2; n <= 14; ++n) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const IntSet s = IntSet::from_mask(mask << 1, n);
        const Statistics st = statistics_of(s, n);
        bool low_only_half = true;
        for (int x : s) {
          if (2 * x <= n && 2 * x != n) low_only_half = false;
        }
        REQUIRE(st.twice_k >= 0);
        REQUIRE(st.ell <= st.m);
        REQUIRE((st.twice_k == 0) == low_only_half);
      }
    }
  }

  TEST_CASE("extremal family members are sum-free and of size ceil(n/2)") {
    for (int n = 1; n <= 40; ++n) {
      const auto fam = extremal_family(n);
      CHECK(fam.size() == static_cast<std::size_t>(n / 2 + 2));
      for (const auto& b : fam) {
        CHECK(b.size() == static_cast<std::size_t>((n + 1) / 2));
      }
      CHECK(is_sum_free(fam.back()));
      CHECK(is_sum_free(fam[fam.size() - 2]));
    }
  }

  TEST_CASE("stability profile") {
    const auto odd = stability_profile(IntSet::odds(10), 10);
    CHECK(odd.schur_triples == 0);
    CHECK(odd.min_escape == 0);
    const auto top = stability_profile(IntSet::interval(6, 10, 10), 10);
    CHECK(top.schur_triples == 0);
    CHECK(top.min_escape == 0);
    const auto all = stability_profile(IntSet::interval(1, 10, 10), 10);
    CHECK(all.schur_triples == schur_edge_count(10));
    CHECK(all.min_escape == 5);
  }

  TEST_CASE("convention parse") {
    CHECK(Convention::parse("equal") == Convention::equal_summands());
    CHECK(Convention::parse("distinct") == Convention::distinct_summands());
    CHECK_THROWS_AS(Convention::parse("other"), std::invalid_argument);
  }
}
