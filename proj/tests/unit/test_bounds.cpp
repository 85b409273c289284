#include <doctest.h>

#include <cmath>
#include <random>

#include "sumfree/bounds.hpp"
#include "sumfree/oracles.hpp"
#include "sumfree/partitions.hpp"

using namespace sumfree;
using doctest::Approx;

TEST_SUITE("bounds") {
  TEST_CASE("log-domain arithmetic") {
    const LogValue a = LogValue::of(6.0), b = LogValue::of(4.0);
    CHECK((a * b).value() == Approx(24.0));
    CHECK((a / b).value() == Approx(1.5));
    CHECK((a + b).value() == Approx(10.0));
    CHECK(b.pow(0.5).value() == Approx(2.0));
    CHECK((a + LogValue::zero()).value() == Approx(6.0));
    CHECK(LogValue::zero().leq(a));
    CHECK_FALSE(a.leq(b));
    CHECK(LogValue::of(BigCount("1" + std::string(400, '0'))).log() == Approx(400 * std::log(10.0)));
    CHECK_THROWS_AS(LogValue::of(-1.0), std::domain_error);
  }

  TEST_CASE("log_binom") {
    CHECK(log_binom(7, 0).log() == Approx(0.0));
    CHECK(log_binom(4, 2).log() == Approx(std::log(6.0)));
    const double exact50 = LogValue::of(binomial(50, 25)).log();
    CHECK(std::abs(log_binom(50, 25).log() - exact50) <= 1e-9 * exact50);
    for (int a = 0; a <= 60; ++a) {
      for (int b = 0; b <= a; ++b) {
        const double want = LogValue::of(binomial(a, b)).log();
        REQUIRE(std::abs(log_binom(a, b).log() - want) <= 1e-9 * std::max(1.0, want));
      }
    }
    CHECK(log_binom(3, 5).is_zero());
  }

  TEST_CASE("binomial inequalities") {
    const InequalityReport r = check_binom_inequalities(10, 4, 2, 0);
    CHECK(r.all_pass());
    REQUIRE(r.lines.size() == 3);
    CHECK(r.lines[0].lhs.value() == Approx(45.0));
    CHECK(r.lines[0].rhs.value() == Approx(93.333).epsilon(1e-3));
    const InequalityReport eq = check_binom_inequalities(30, 12, 0, 0);
    CHECK(eq.lines[0].lhs.log() == Approx(eq.lines[0].rhs.log()));
    CHECK_THROWS_AS(check_binom_inequalities(5, 5, 1, 0), std::invalid_argument);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) {
      const long a = 2 + static_cast<long>(rng() % 999);
      const long b = 1 + static_cast<long>(rng() % static_cast<unsigned long>(a - 1));
      const long c = static_cast<long>(rng() % static_cast<unsigned long>(b));
      const long d = static_cast<long>(rng() % static_cast<unsigned long>(b + 1));
      REQUIRE(check_binom_inequalities(a, b, c, d).all_pass());
    }
  }

  TEST_CASE("gamma sum") {
    const GammaSumReport r = check_gamma_sum(1, 1);
    const double e = std::exp(1.0);
    CHECK(r.sum == Approx(e / ((e - 1) * (e - 1))));
    CHECK(r.sum == Approx(0.9206).epsilon(1e-4));
    CHECK(r.pass);
    const GammaSumReport big_b = check_gamma_sum(1, 20);
    CHECK(big_b.sum == Approx(std::exp(-20.0)).epsilon(1e-6));
    CHECK(big_b.pass);
  }

  TEST_CASE("janson examples") {
    JansonInput one{{IntSet(10, {3, 7})}, 10, 5};
    const JansonQuantities a = janson_quantities(one);
    CHECK(a.mu.value() == Approx(0.25));
    CHECK(a.delta.is_zero());

    JansonInput two{{IntSet(10, {1, 2}), IntSet(10, {3, 4})}, 10, 5};
    const JansonQuantities b = janson_quantities(two);
    CHECK(b.mu.value() == Approx(2 * 0.25));
    CHECK(b.delta.is_zero());

    const JansonInput fam = schur_pair_family(10, IntSet(10, {2}), 3);
    const oracle::JansonPlain plain = oracle::janson(fam);
    const JansonQuantities c = janson_quantities(fam);
    CHECK(c.mu.value() == Approx(plain.mu).epsilon(1e-12));
    CHECK(c.delta.value() == Approx(plain.delta).epsilon(1e-12));
    const JansonQuantities d = janson_quantities_serial(fam);
    CHECK(d.mu.log() == c.mu.log());
    CHECK(d.delta.log() == c.delta.log());
  }

  TEST_CASE("schur pair family") {
    const JansonInput fam = schur_pair_family(10, IntSet(10, {2}), 3);
    CHECK(fam.ground_size == 5);
    for (const auto& pair : fam.family) {
      REQUIRE(pair.size() == 2);
      const int x = pair.min(), y = pair.max();
      CHECK(x % 2 == 1);
      CHECK((x + y == 2 || y - x == 2));
    }
  }

  TEST_CASE("pair graph") {
    const PairGraph g = build_pair_graph(10, IntSet(10, {4}), IntSet(10));
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges[0] == std::pair<int, int>{6, 10});

    const PairGraph h = build_pair_graph(10, IntSet(10, {1}), IntSet(10));
    CHECK(h.edges == std::vector<std::pair<int, int>>{{6, 7}, {7, 8}, {8, 9}, {9, 10}});

    const PairGraph x = build_pair_graph(10, IntSet(10, {1}), IntSet(10, {8}));
    CHECK(x.edges == std::vector<std::pair<int, int>>{{6, 7}, {9, 10}});

    std::mt19937_64 rng(4);
    for (int n = 2; n <= 200; n += 2) {
      std::vector<int> s;
      for (int v = 1; v <= n / 2; ++v) {
        if (rng() % 5 == 0) s.push_back(v);
      }
      const PairGraph r = build_pair_graph(n, IntSet(n, s), IntSet(n));
      std::size_t k = 0;
      for (int v : s) k += static_cast<std::size_t>(n / 2 - v);
      REQUIRE(r.edge_count() == k);
      REQUIRE(r.max_degree <= 2 * static_cast<int>(s.size()));
    }
  }

  TEST_CASE("theorem right-hand sides") {
    RhsParams p;
    p.k = 8;
    p.ell = 3;
    const LogValue parts = theorem_rhs(Theorem::distinct_parts, p);
    CHECK(parts.log() == Approx(3 * std::log(std::exp(2.0) * 8 / 9)));
    CHECK(LogValue::of(distinct_partition_count(8, 3)).leq(parts));

    RhsParams ce;
    ce.n = 20;
    ce.m = 6;
    ce.C = 0;
    CHECK(theorem_rhs("CEthm", ce).log() == Approx(LogValue::of(binomial(10, 6)).log()));

    RhsParams lin;
    lin.lambda = 2;
    lin.delta = 0;
    lin.ell = 10;
    CHECK(theorem_rhs(Theorem::small_sumset_linear, lin).log() == Approx(10 * std::log(5 * std::exp(1.0) / 6)));

    CHECK(parse_theorem("S+S") == Theorem::small_sumset);
    CHECK(theorem_name(Theorem::conjecture) == "conj");
    CHECK_THROWS_AS(parse_theorem("nope"), std::invalid_argument);
  }

  TEST_CASE("empirical constant") {
    const auto c = empirical_constant(4, 2, 4);
    REQUIRE(c);
    CHECK(*c == Approx(1.0));
    CHECK(*empirical_constant(20, 6, binomial(10, 6)) == Approx(0.0));
  }

  TEST_CASE("Hardy-Ramanujan ratio approaches one") {
    CHECK(hardy_ramanujan_ratio(200, partition_count(200)) == Approx(1.0).epsilon(0.1));
  }
}
