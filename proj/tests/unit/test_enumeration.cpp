#include <doctest.h>

#include "sumfree/enumeration.hpp"

using namespace sumfree;

namespace {

CountQuery query(int n, std::optional<int> m = std::nullopt, Convention conv = {}) {
  CountQuery q;
  q.n = n;
  q.m = m;
  q.convention = conv;
  return q;
}

}  // namespace

TEST_SUITE("enumeration") {
  TEST_CASE("oracle examples") {
    const CountResult r = count_oracle(query(4));
    CHECK(r.total == 9);
    CHECK(r.by_size == std::map<int, BigCount>{{0, 1}, {1, 4}, {2, 4}});
    CHECK(count_oracle(query(3)).total == 6);
    CHECK(count_oracle(query(4, 3)).total == 0);
    CHECK(r.method == CountMethod::oracle);
  }

  TEST_CASE("search examples") {
    CHECK(count_sum_free(query(4, 2)).total == 4);
    CHECK(count_sum_free(query(10, 5)).total == count_oracle(query(10, 5)).total);
    CHECK(count_sum_free(query(20)).total == 9583);
    CHECK(count_sum_free(query(40)).total == 14158720);
  }

  TEST_CASE("parallel, serial and oracle agree, with strata") {
    for (Convention conv : {Convention::equal_summands(), Convention::distinct_summands()}) {
      for (int n = 1; n <= 16; ++n) {
        CountQuery q = query(n, std::nullopt, conv);
        q.stratify = kStrataEll | kStrataK | kStrataA | kStrataOdd;
        const CountResult o = count_oracle(q);
        const CountResult s = count_sum_free_serial(q);
        const CountResult p = count_sum_free(q);
        REQUIRE(s.by_size == o.by_size);
        REQUIRE(p.by_size == o.by_size);
        REQUIRE(s.strata == o.strata);
        REQUIRE(p.strata == o.strata);
      }
    }
  }

  TEST_CASE("restricted universe") {
    CountQuery q = query(12, 3);
    q.universe = IntSet(12, {2, 3, 5, 7, 11});
    CHECK(count_sum_free(q).total == count_oracle(q).total);
    CHECK(count_sum_free_serial(q).total == count_oracle(q).total);
  }

  TEST_CASE("window counts") {
    for (int m = 0; m <= 5; ++m) CHECK(count_in_window(10, 0, m).count == binomial(5, m));
    CHECK(window_universe(10, 0).to_string() == "{6,7,8,9,10}");
    CHECK(window_universe(10, 2).size() == 7);
    CountQuery q = query(10, 4);
    q.universe = window_universe(10, 2);
    CHECK(count_in_window(10, 2, 4).count == count_oracle(q).total);
    const WindowCount empty = count_in_window(10, 2, 0);
    CHECK(empty.count == 1);
    CHECK(empty.probability == 1.0);
  }

  TEST_CASE("enumerate streams exactly the counted sets") {
    std::vector<std::string> got;
    enumerate_sum_free(query(4, 2), [&](const IntSet& s) { got.push_back(s.to_string()); });
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<std::string>{"{1,3}", "{1,4}", "{2,3}", "{3,4}"});

    got.clear();
    enumerate_sum_free(query(2, 1), [&](const IntSet& s) { got.push_back(s.to_string()); });
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<std::string>{"{1}", "{2}"});

    int calls = 0;
    enumerate_sum_free(query(4, 3), [&](const IntSet&) { ++calls; });
    CHECK(calls == 0);

    std::uint64_t n = 0;
    enumerate_sum_free(query(18), [&](const IntSet& s) {
      ++n;
      REQUIRE(is_sum_free(s));
    });
    CHECK(BigCount(static_cast<unsigned long>(n)) == count_sum_free(query(18)).total);
  }

  TEST_CASE("enumerate refuses oversized streams") {
    int calls = 0;
    CHECK_THROWS_AS(enumerate_sum_free(query(30), [&](const IntSet&) { ++calls; }, 1000), BudgetExceeded);
    CHECK(calls == 0);
  }

  TEST_CASE("node budget") {
    SearchOptions opts;
    opts.node_budget = 1000;
    CHECK_THROWS_AS(count_sum_free(query(40), opts), BudgetExceeded);
    CHECK_THROWS_AS(count_sum_free_serial(query(40), opts), BudgetExceeded);
  }

  TEST_CASE("stratified counts") {
    const StratifiedCounts a = stratified_counts(10, 5);
    CHECK(a.joint.at(StrataCell{0, 0}) == 1);

    const StratifiedCounts b = stratified_counts(8, 4);
    const Statistics st = statistics_of(IntSet::of({1, 3, 5, 7}), 8);
    CHECK(b.odd_only.at(StrataCell{st.ell, st.twice_k}) >= 1);

    CountQuery q = query(12, 4);
    q.stratify = kStrataEll | kStrataK;
    const CountResult o = count_oracle(q);
    const StratifiedCounts c = stratified_counts(12, 4);
    std::map<StrataCell, BigCount> expected;
    for (const auto& [key, count] : o.strata) expected[StrataCell{static_cast<int>(key.ell), key.twice_k}] += count;
    CHECK(c.joint == expected);
    BigCount total = 0;
    for (const auto& [cell, count] : c.joint) total += count;
    CHECK(total == c.total);
  }

  TEST_CASE("bad queries") {
    CHECK_THROWS_AS(count_sum_free(query(64)), std::invalid_argument);
    CHECK_THROWS_AS(count_oracle(query(30)), std::invalid_argument);
  }
}
