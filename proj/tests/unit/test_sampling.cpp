#include <doctest.h>

#include "sumfree/enumeration.hpp"
#include "sumfree/sampling.hpp"

using namespace sumfree;

TEST_SUITE("sampling") {
  TEST_CASE("samples are sum-free m-sets") {
    const SampleReport r = sample_uniform(10, 5, 100, 9);
    std::uint64_t hits = 0;
    for (const auto& [mask, c] : r.set_frequencies) {
      const IntSet s = IntSet::from_mask(mask, 10);
      CHECK(s.size() == 5);
      CHECK(is_sum_free(s));
      hits += c;
    }
    CHECK(hits == 100);
    CHECK(r.draws >= 100);
  }

  TEST_CASE("same seed and workers give the same report") {
    SampleOptions o;
    o.workers = 3;
    const SampleReport a = sample_uniform(16, 4, 3000, 42, o);
    const SampleReport b = sample_uniform(16, 4, 3000, 42, o);
    CHECK(a.set_frequencies == b.set_frequencies);
    CHECK(a.histogram == b.histogram);
    CHECK(a.draws == b.draws);
    const SampleReport c = sample_uniform(16, 4, 3000, 43, o);
    CHECK(c.set_frequencies != a.set_frequencies);
  }

  TEST_CASE("m = 1 is uniform over [n]") {
    const SampleReport r = sample_uniform(20, 1, 20'000, 2);
    CHECK(r.acceptance_estimate == 1.0);
    CHECK(r.set_frequencies.size() == 20);
    for (const auto& [cell, c] : r.histogram) CHECK((cell.ell == 0 || cell.ell == 1));
    for (const auto& [mask, c] : r.set_frequencies) {
      CHECK(c > 800);
      CHECK(c < 1200);
    }
  }

  TEST_CASE("infeasible acceptance") {
    SampleOptions o;
    o.min_acceptance = 0.5;
    CHECK_THROWS_AS(sample_uniform(30, 14, 10, 1, o), InfeasibleSampling);
  }

  TEST_CASE("m rules") {
    CHECK(MRule::parse("sqrt").apply(24) == 5);
    CHECK(MRule::parse("half").apply(25) == 13);
    CHECK(MRule::parse("fixed:4").apply(100) == 4);
    CHECK(MRule::parse("frac:0.25").apply(40) == 10);
    CHECK(MRule::parse("fixed:4").to_string() == "fixed:4");
    CHECK_THROWS_AS(MRule::parse("third"), std::invalid_argument);
  }

  TEST_CASE("exact trend rows reproduce the stratified counts") {
    const auto rows = structure_trend({24}, MRule::parse("fixed:6"), 1000, 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].exact);
    const StratifiedCounts sc = stratified_counts(24, 6);
    std::map<int, BigCount> by_ell;
    for (const auto& [cell, c] : sc.joint) by_ell[cell.ell] += c;
    for (const auto& [ell, c] : by_ell) {
      CHECK(rows[0].ell_distribution.at(ell) == doctest::Approx(mpq_class(c, sc.total).get_d()));
    }
  }

  TEST_CASE("extremal regime concentrates on small ell") {
    const auto rows = structure_trend({20, 24, 28}, MRule::parse("half"), 1000, 1);
    for (const auto& r : rows) {
      double small = 0;
      for (const auto& [ell, p] : r.ell_distribution) {
        if (ell <= 1) small += p;
      }
      CHECK(small > 0.5);
    }
  }
}
