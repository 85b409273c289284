#include <doctest.h>

#include "sumfree/oracles.hpp"
#include "sumfree/partitions.hpp"

using namespace sumfree;

TEST_SUITE("partitions") {
  TEST_CASE("partition counts") {
    CHECK(partition_count(3) == 3);
    CHECK(partition_count(0) == 1);
    CHECK(partition_count(10) == 42);
    CHECK(partition_count(100) == BigCount("190569292"));
    for (int k = 0; k <= 40; ++k) REQUIRE(partition_count(k) == oracle::partitions(k));
  }

  TEST_CASE("distinct-part counts") {
    CHECK(distinct_partition_count(8, 3) == 2);
    CHECK(distinct_partition_count(5, 3) == 0);
    CHECK(distinct_partition_count(0, 0) == 1);
    for (int k = 1; k <= 50; ++k) REQUIRE(distinct_partition_count(k, 1) == 1);
    for (int k = 0; k <= 40; ++k) {
      for (int ell = 0; ell <= 9; ++ell) REQUIRE(distinct_partition_count(k, ell) == oracle::distinct_partitions(k, ell));
    }
  }

  TEST_CASE("summing p*_ell(k) over ell gives partitions into distinct parts") {
    const auto table = distinct_partition_table(80, 13);
    for (int k = 0; k <= 80; ++k) {
      BigCount sum = 0;
      for (int ell = 0; ell <= 13; ++ell) sum += table[static_cast<std::size_t>(k)][static_cast<std::size_t>(ell)];
      REQUIRE(sum == oracle::distinct_partitions_any_size(k));
    }
  }

  TEST_CASE("restricted examples") {
    CHECK(count_restricted({12, 3, std::nullopt, std::nullopt}) == 7);
    // {1,4,7}, {2,4,6} and {3,4,5} all have |S+S| = 5
    CHECK(count_restricted({12, 3, 5, std::nullopt}) == 3);
    CHECK(count_restricted({0, 0, std::nullopt, std::nullopt}) == 1);
    CHECK(count_restricted({12, 3, std::nullopt, 7}) == 5);
  }

  TEST_CASE("restricted counts are monotone in the caps and match the serial version") {
    for (int ell = 1; ell <= 5; ++ell) {
      for (int k = ell * (ell + 1) / 2; k <= 40; ++k) {
        BigCount prev = 0;
        for (int cap = 0; cap <= 2 * k; ++cap) {
          const PartitionQuery q{k, ell, cap, std::nullopt};
          const BigCount c = count_restricted(q);
          REQUIRE(c >= prev);
          REQUIRE(c == count_restricted_serial(q));
          prev = c;
        }
        REQUIRE(prev == distinct_partition_count(k, ell));
      }
    }
  }

  TEST_CASE("sumset_size of a part list") {
    const int ap[] = {3, 4, 5};
    CHECK(sumset_size(ap) == 5);
    const int other[] = {1, 2, 9};
    CHECK(sumset_size(other) == 6);
  }

  TEST_CASE("small-sumset subsets of [n]") {
    CHECK(count_small_sumset_sets(6, 2, 3) == 15);
    CHECK(count_small_sumset_sets(4, 3, 5) == 2);
    CHECK(count_small_sumset_sets(4, 3, 4) == 0);
  }

  TEST_CASE("budget guard") {
    CHECK_THROWS_AS(count_restricted({400, 12, 30, std::nullopt}, 1000), BudgetExceeded);
    CHECK_THROWS_AS(count_small_sumset_sets(60, 20, 50, 1000), BudgetExceeded);
  }
}
