#include "sumfree/verify.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "sumfree/bounds.hpp"
#include "sumfree/core.hpp"
#include "sumfree/enumeration.hpp"
#include "sumfree/oracles.hpp"
#include "sumfree/partitions.hpp"
#include "sumfree/sampling.hpp"
#include "sumfree/sumsets.hpp"

namespace sumfree {

Suite parse_suite(const std::string& name) {
  if (name == "small") return Suite::small;
  if (name == "full") return Suite::full;
  throw std::invalid_argument("unknown suite '" + name + "' (small|full)");
}

std::string format_result_line(const CriterionResult& r) {
  return fmt::format("[{}] criterion {:>2}: {} ({:.2f}s) {}", r.pass ? "PASS" : "FAIL", r.id, r.name, r.seconds,
                     r.detail);
}

namespace {

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

class Context {
 public:
  explicit Context(const VerifyOptions& o) : opts(o) {}

  bool full() const { return opts.suite == Suite::full; }
  SearchOptions search() const {
    SearchOptions s;
    s.threads = opts.threads;
    return s;
  }
  void emit(const Table& t) const {
    if (!opts.table_dir) return;
    std::filesystem::create_directories(*opts.table_dir);
    std::ofstream out(*opts.table_dir / (t.name + ".csv"));
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << "\n";
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
  }

  const VerifyOptions& opts;
};

std::vector<int> random_set(std::mt19937_64& rng, int max_size, int max_value) {
  std::uniform_int_distribution<int> size_dist(1, max_size);
  std::uniform_int_distribution<int> value_dist(1, max_value);
  std::set<int> s;
  const int want = std::min(size_dist(rng), max_value);
  while (static_cast<int>(s.size()) < want) s.insert(value_dist(rng));
  return {s.begin(), s.end()};
}

// 1. Oracle equivalence for every n, m and both conventions.
CriterionResult oracle_equivalence(const Context& ctx) {
  const int max_n = ctx.full() ? 20 : 14;
  int mismatches = 0, checks = 0;
  std::string first;
  for (Convention conv : {Convention::equal_summands(), Convention::distinct_summands()}) {
    for (int n = 1; n <= max_n; ++n) {
      CountQuery q;
      q.n = n;
      q.convention = conv;
      const CountResult oracle = count_oracle(q);
      const CountResult all = count_sum_free(q, ctx.search());
      ++checks;
      if (all.by_size != oracle.by_size || all.total != oracle.total) {
        ++mismatches;
        if (first.empty()) first = fmt::format("n={} conv={} all sizes", n, conv.name());
      }
      for (int m = 0; m <= n; ++m) {
        q.m = m;
        const CountResult one = count_sum_free(q, ctx.search());
        auto it = oracle.by_size.find(m);
        const BigCount expected = it == oracle.by_size.end() ? BigCount(0) : it->second;
        ++checks;
        if (one.total != expected) {
          ++mismatches;
          if (first.empty()) first = fmt::format("n={} m={} conv={}", n, m, conv.name());
        }
      }
    }
  }
  return {1, "count_sum_free == count_oracle, n <= " + std::to_string(max_n) + ", all m, both conventions",
          mismatches == 0, fmt::format("{} comparisons, {} mismatches{}", checks, mismatches,
                                       first.empty() ? "" : " (first: " + first + ")")};
}

// 2. Values pinned by worked examples.
CriterionResult pinned_values(const Context&) {
  const BigCount p3 = partition_count(3);
  const BigCount q83 = distinct_partition_count(8, 3);
  return {2, "p(3) = 3 and p*_3(8) = 2", p3 == 3 && q83 == 2,
          fmt::format("p(3)={} p*_3(8)={}", to_decimal(p3), to_decimal(q83))};
}

// 3. p*_ell(k) < (e^2 k / ell^2)^ell, strictly.
CriterionResult distinct_parts_bound(const Context& ctx) {
  const int max_k = ctx.full() ? 120 : 60;
  int max_ell = 1;
  while ((max_ell + 1) * (max_ell + 2) / 2 <= max_k) ++max_ell;
  const auto table = distinct_partition_table(max_k, max_ell);
  int violations = 0, checks = 0;
  double worst = -1e300;
  Table t{"distinct_parts_bound", {"k", "ell", "p_star", "log_rhs", "log_ratio"}, {}};
  for (int ell = 1; ell <= max_ell; ++ell) {
    for (int k = ell * (ell + 1) / 2; k <= max_k; ++k) {
      const BigCount& count = table[static_cast<std::size_t>(k)][static_cast<std::size_t>(ell)];
      RhsParams p;
      p.k = k;
      p.ell = ell;
      const LogValue rhs = theorem_rhs(Theorem::distinct_parts, p);
      const LogValue lhs = LogValue::of(count);
      ++checks;
      const bool ok = lhs.is_zero() || lhs.log() < rhs.log();
      if (!ok) ++violations;
      if (!lhs.is_zero()) worst = std::max(worst, lhs.log() - rhs.log());
      t.rows.push_back({std::to_string(k), std::to_string(ell), to_decimal(count), fmt::format("{:.6f}", rhs.log()),
                        lhs.is_zero() ? "-inf" : fmt::format("{:.6f}", lhs.log() - rhs.log())});
    }
  }
  ctx.emit(t);
  return {3, "p*_ell(k) < (e^2 k/ell^2)^ell for ell(ell+1)/2 <= k <= " + std::to_string(max_k), violations == 0,
          fmt::format("{} cells, {} violations, max log(count/rhs) = {:.4f}", checks, violations, worst)};
}

// 4. Cameron-Erdos trend: 1 <= count / 2^{n/2} <= 12 and C*(n, m) <= 4.
CriterionResult cameron_erdos_trend(const Context& ctx) {
  constexpr double kRatioCap = 12.0;
  constexpr double kConstantCap = 4.0;
  const int max_n = ctx.full() ? 40 : 26;
  bool ok = true;
  double ratio_lo = 1e300, ratio_hi = 0, c_max = -1e300;
  int ratio_hi_n = 0, c_max_n = 0, c_max_m = 0;
  Table totals{"cameron_erdos_totals", {"n", "count", "ratio_to_2^(n/2)"}, {}};
  Table consts{"empirical_constants", {"n", "m", "count", "binom(ceil(n/2),m)", "C_star"}, {}};
  for (int n = 10; n <= max_n; n += 2) {
    CountQuery q;
    q.n = n;
    const CountResult r = count_sum_free(q, ctx.search());
    const double ratio = (LogValue::of(r.total) / LogValue::from_log(n / 2 * std::log(2.0))).value();
    totals.rows.push_back({std::to_string(n), to_decimal(r.total), fmt::format("{:.6f}", ratio)});
    ratio_lo = std::min(ratio_lo, ratio);
    if (ratio > ratio_hi) {
      ratio_hi = ratio;
      ratio_hi_n = n;
    }
    if (ratio < 1.0 || ratio > kRatioCap) ok = false;
    for (const auto& [m, count] : r.by_size) {
      if (m * m < n || m > (n + 1) / 2) continue;
      const auto c = empirical_constant(n, m, count);
      if (!c) continue;
      consts.rows.push_back({std::to_string(n), std::to_string(m), to_decimal(count),
                             to_decimal(binomial((n + 1) / 2, m)), fmt::format("{:.6f}", *c)});
      if (*c > c_max) {
        c_max = *c;
        c_max_n = n;
        c_max_m = m;
      }
      if (*c > kConstantCap) ok = false;
    }
  }
  ctx.emit(totals);
  ctx.emit(consts);
  return {4, fmt::format("1 <= count/2^(n/2) <= {} and C*(n,m) <= {}, even 10 <= n <= {}", kRatioCap, kConstantCap, max_n),
          ok,
          fmt::format("ratio in [{:.4f}, {:.4f}] (max at n={}), max C* = {:.4f} at (n={}, m={})", ratio_lo, ratio_hi,
                      ratio_hi_n, c_max, c_max_n, c_max_m)};
}

// 5. Lower bound and the window construction with c = 0.05.
CriterionResult window_lower_bound(const Context& ctx) {
  constexpr double kC = 0.05;
  const int max_n = ctx.full() ? 28 : 20;
  int count_failures = 0, window_failures = 0, checks = 0;
  std::string first;
  Table t{"window_probability", {"n", "m", "a", "count", "subsets", "probability", "lower_bound", "count_n_m",
                                 "binom(ceil(n/2),m)"}, {}};
  for (int n = 16; n <= max_n; n += 2) {
    CountQuery q;
    q.n = n;
    const CountResult all = count_sum_free(q, ctx.search());
    for (int m = static_cast<int>(std::ceil(std::sqrt(n))); m <= (n + 1) / 2; ++m) {
      ++checks;
      auto it = all.by_size.find(m);
      const BigCount count = it == all.by_size.end() ? BigCount(0) : it->second;
      const BigCount extremal = binomial((n + 1) / 2, m);
      if (count < extremal) ++count_failures;
      const int a = static_cast<int>(std::floor(kC * n * n / (static_cast<double>(m) * m)));
      const WindowCount w = count_in_window(n, a, m, ctx.search());
      const double bound = std::exp(-kC * n / (2.0 * m));
      if (w.probability < bound) {
        ++window_failures;
        if (first.empty()) first = fmt::format(" (first: n={} m={} a={} P={:.4f} < {:.4f})", n, m, a, w.probability, bound);
      }
      t.rows.push_back({std::to_string(n), std::to_string(m), std::to_string(a), to_decimal(w.count),
                        to_decimal(w.subsets), fmt::format("{:.6f}", w.probability), fmt::format("{:.6f}", bound),
                        to_decimal(count), to_decimal(extremal)});
    }
  }
  ctx.emit(t);
  return {5, fmt::format("count(n,m) >= binom(ceil(n/2),m) and window P >= exp(-0.05n/2m), even 16 <= n <= {}", max_n),
          count_failures == 0 && window_failures == 0,
          fmt::format("{} (n,m) pairs, {} count failures, {} window failures{}", checks, count_failures,
                      window_failures, first)};
}

// 6. Freiman 3k-4 on all normalized sets.
CriterionResult freiman_exhaustive(const Context& ctx) {
  const int max_value = ctx.full() ? 40 : 25;
  std::uint64_t regime = 0, failures = 0, oracle_failures = 0;
  std::string first;
  std::vector<int> s;
  std::function<void(int, int)> grow = [&](int next, int target) {
    if (static_cast<int>(s.size()) == target) {
      int g = 0;
      for (int x : s) g = std::gcd(g, x - 1);
      if (g != 1) return;
      const IntSet set = IntSet::of(std::span<const int>(s));
      const auto k = static_cast<std::int64_t>(s.size());
      const auto doubled = static_cast<std::int64_t>(sumset(set, set).size());
      if (doubled > 3 * k - 4) return;
      ++regime;
      const std::int64_t allowed = doubled - k + 1;
      const auto cover = freiman_cover(set);
      bool ok = cover && cover->length <= allowed;
      if (ok) {
        for (int x : s) ok = ok && cover->contains(x);
      }
      if (!ok) {
        ++failures;
        if (first.empty()) first = " (first: " + set.to_string() + ")";
      }
      if (!oracle::ap_cover_exists(s, allowed)) ++oracle_failures;
      return;
    }
    for (int x = next; x <= max_value; ++x) {
      s.push_back(x);
      grow(x + 1, target);
      s.pop_back();
    }
  };
  for (int size = 3; size <= 5; ++size) {
    s = {1};
    grow(2, size);
  }
  return {6, fmt::format("3k-4 covers for normalized |S| in 3..5, max <= {}", max_value),
          failures == 0 && oracle_failures == 0,
          fmt::format("{} sets in the regime, {} cover failures, {} with no cover by brute force{}", regime, failures,
                      oracle_failures, first)};
}

// 7. |b_set(S, delta)| <= |S+S| / (1 - delta).
CriterionResult b_set_bound(const Context& ctx) {
  const int cases = ctx.full() ? 10'000 : 1'000;
  std::mt19937_64 rng(7);
  const Ratio deltas[] = {Ratio(0), Ratio(1, 4), Ratio(1, 2)};
  int failures = 0;
  double tightest = 0;
  for (int i = 0; i < cases; ++i) {
    const std::vector<int> members = random_set(rng, 12, 60);
    const Ratio delta = deltas[static_cast<std::size_t>(i % 3)];
    const IntSet s = IntSet::of(std::span<const int>(members));
    const auto b = b_set({s, delta});
    const auto ss = static_cast<std::int64_t>(sumset(s, s).size());
    // |B| (1 - delta) <= |S+S|
    const auto lhs = static_cast<std::int64_t>(b.size()) * (delta.den - delta.num);
    if (lhs > ss * delta.den) ++failures;
    tightest = std::max(tightest, static_cast<double>(lhs) / static_cast<double>(ss * delta.den));
  }
  return {7, fmt::format("|b_set(S,delta)| <= |S+S|/(1-delta) on {} random cases", cases), failures == 0,
          fmt::format("{} failures, max |B|(1-delta)/|S+S| = {:.4f}", failures, tightest)};
}

// 8. span(S+S) = 2 span(S).
CriterionResult span_identity(const Context& ctx) {
  const int cases = ctx.full() ? 10'000 : 1'000;
  std::mt19937_64 rng(8);
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    const std::vector<int> members = random_set(rng, 20, 500);
    const IntSet s = IntSet::of(std::span<const int>(members));
    if (span(sumset(s, s)) != 2 * span(s)) ++failures;
  }
  return {8, fmt::format("span(S+S) = 2 span(S) on {} random sets", cases), failures == 0,
          fmt::format("{} failures", failures)};
}

// 9. Janson quantities against a double loop; pair-graph edge count and degree.
CriterionResult janson_ingredients(const Context& ctx) {
  const int families = ctx.full() ? 1'000 : 100;
  const int max_n = ctx.full() ? 200 : 60;
  std::mt19937_64 rng(9);
  int janson_failures = 0;
  double worst_rel = 0;
  for (int i = 0; i < families; ++i) {
    std::uniform_int_distribution<int> ground_dist(4, 30);
    JansonInput in;
    in.ground_size = ground_dist(rng);
    std::uniform_int_distribution<int> m_dist(1, in.ground_size);
    std::uniform_int_distribution<int> count_dist(0, 25);
    in.m = m_dist(rng);
    const int count = count_dist(rng);
    for (int j = 0; j < count; ++j) {
      const std::vector<int> u = random_set(rng, 4, in.ground_size);
      in.family.push_back(IntSet(in.ground_size, u));
    }
    const JansonQuantities fast = janson_quantities(in);
    const oracle::JansonPlain slow = oracle::janson(in);
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    const double r_mu = slow.mu == 0 ? (fast.mu.is_zero() ? 0 : 1) : rel(fast.mu.value(), slow.mu);
    const double r_delta = slow.delta == 0 ? (fast.delta.is_zero() ? 0 : 1) : rel(fast.delta.value(), slow.delta);
    worst_rel = std::max({worst_rel, r_mu, r_delta});
    if (r_mu > kRelTol || r_delta > kRelTol) ++janson_failures;
  }
  int graph_failures = 0, graphs = 0;
  for (int n = 2; n <= max_n; n += 2) {
    for (int rep = 0; rep < 5; ++rep) {
      const std::vector<int> members = random_set(rng, std::max(1, n / 4), n / 2);
      const IntSet s(n, members);
      const PairGraph g = build_pair_graph(n, s, IntSet(n));
      std::int64_t expected = 0;
      for (int x : members) expected += n / 2 - x;
      const Statistics st = statistics_of(s, n);
      ++graphs;
      const bool ok = static_cast<std::int64_t>(g.edge_count()) == expected && 2 * expected == st.twice_k &&
                      g.max_degree <= 2 * static_cast<int>(members.size());
      if (!ok) ++graph_failures;
    }
  }
  return {9, "Janson mu/Delta vs double loop; pair graph has k edges and max degree <= 2|S|",
          janson_failures == 0 && graph_failures == 0,
          fmt::format("{} families ({} failures, worst rel err {:.2e}); {} graphs up to n={} ({} failures)", families,
                      janson_failures, worst_rel, graphs, max_n, graph_failures)};
}

// 10. Restricted partitions against the small-sumset bounds with delta = 1.
CriterionResult restricted_partition_tables(const Context& ctx) {
  const int max_ell = ctx.full() ? 12 : 8;
  const int max_k = ctx.full() ? 90 : 50;
  constexpr double kDelta = 1.0;
  const double factors[] = {2.0, 2.5, 3.0};
  int violations = 0, checked = 0, outside = 0;
  double worst13 = -1e300, worst15 = -1e300;
  Table t{"restricted_partitions", {"k", "ell", "regime", "factor", "cap", "count", "log_rhs", "log_ratio", "in_hypothesis"}, {}};
  for (int ell = 1; ell <= max_ell; ++ell) {
    for (int k = ell * (ell + 1) / 2; k <= max_k; ++k) {
      for (double f : factors) {
        // |S+S| <= c k / ell
        {
          PartitionQuery q{k, ell, static_cast<int>(std::floor(f * k / ell)), std::nullopt};
          const BigCount count = count_restricted(q);
          RhsParams p;
          p.k = k;
          p.ell = ell;
          p.c = f;
          p.delta = kDelta;
          const LogValue rhs = theorem_rhs(Theorem::small_sumset, p);
          const LogValue lhs = LogValue::of(count);
          ++checked;
          if (!lhs.leq(rhs)) ++violations;
          if (!lhs.is_zero()) worst13 = std::max(worst13, lhs.log() - rhs.log());
          t.rows.push_back({std::to_string(k), std::to_string(ell), "ck/ell", fmt::format("{}", f),
                            std::to_string(*q.sumset_cap), to_decimal(count), fmt::format("{:.6f}", rhs.log()),
                            lhs.is_zero() ? "-inf" : fmt::format("{:.6f}", lhs.log() - rhs.log()), "1"});
        }
        // |S+S| <= lambda ell, asserted where k <= ell^2 / delta
        {
          PartitionQuery q{k, ell, static_cast<int>(std::floor(f * ell)), std::nullopt};
          const BigCount count = count_restricted(q);
          RhsParams p;
          p.k = k;
          p.ell = ell;
          p.lambda = f;
          p.delta = kDelta;
          const LogValue rhs = theorem_rhs(Theorem::small_sumset_linear, p);
          const LogValue lhs = LogValue::of(count);
          const bool hypothesis = k <= ell * ell / kDelta;
          if (hypothesis) {
            ++checked;
            if (!lhs.leq(rhs)) ++violations;
            if (!lhs.is_zero()) worst15 = std::max(worst15, lhs.log() - rhs.log());
          } else {
            ++outside;
          }
          t.rows.push_back({std::to_string(k), std::to_string(ell), "lambda*ell", fmt::format("{}", f),
                            std::to_string(*q.sumset_cap), to_decimal(count), fmt::format("{:.6f}", rhs.log()),
                            lhs.is_zero() ? "-inf" : fmt::format("{:.6f}", lhs.log() - rhs.log()),
                            hypothesis ? "1" : "0"});
        }
      }
    }
  }
  ctx.emit(t);
  return {10, fmt::format("restricted counts <= RHS with delta=1, ell <= {}, k <= {}", max_ell, max_k), violations == 0,
          fmt::format("{} asserted cells, {} violations, worst log ratio ck/ell {:.4f}, lambda*ell {:.4f}; {} "
                      "lambda*ell cells outside k <= ell^2 reported only",
                      checked, violations, worst13, worst15, outside)};
}

// 11. Chi-square uniformity of the rejection sampler.
CriterionResult sampler_uniformity(const Context& ctx) {
  constexpr int kN = 12, kM = 3, kSeeds = 10, kNeeded = 9;
  constexpr std::uint64_t kSamples = 10'000;
  CountQuery q;
  q.n = kN;
  q.m = kM;
  std::vector<std::uint64_t> support;
  enumerate_sum_free(q, [&](const IntSet& s) { support.push_back(s.to_mask()); });
  const double expected = static_cast<double>(kSamples) / static_cast<double>(support.size());
  const boost::math::chi_squared dist(static_cast<double>(support.size() - 1));
  const double critical = boost::math::quantile(dist, 0.999);
  int below = 0;
  bool stray = false;
  std::string stats;
  SampleOptions so;
  so.workers = std::max(1, ctx.opts.threads);
  for (int seed = 1; seed <= kSeeds; ++seed) {
    const SampleReport rep = sample_uniform(kN, kM, kSamples, static_cast<std::uint64_t>(seed), so);
    double chi2 = 0;
    std::uint64_t seen = 0;
    for (std::uint64_t s : support) {
      auto it = rep.set_frequencies.find(s);
      const double obs = it == rep.set_frequencies.end() ? 0.0 : static_cast<double>(it->second);
      seen += static_cast<std::uint64_t>(obs);
      chi2 += (obs - expected) * (obs - expected) / expected;
    }
    if (seen != kSamples) stray = true;
    if (chi2 < critical) ++below;
    stats += fmt::format("{}{:.1f}", seed == 1 ? "" : " ", chi2);
  }
  return {11, "sampler chi-square below the 0.999 quantile in >= 9/10 seeds (n=12, m=3, 10^4 samples)",
          below >= kNeeded && !stray,
          fmt::format("{}/{} seeds below {:.1f} (df={}); chi2: {}{}", below, kSeeds, critical, support.size() - 1, stats,
                      stray ? "; samples outside the sum-free support" : "")};
}

// 12. Binomial inequalities and the Gamma-sum bound.
CriterionResult inequality_sweeps(const Context& ctx) {
  const int cases = ctx.full() ? 10'000 : 1'000;
  std::mt19937_64 rng(12);
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    std::uniform_int_distribution<long> a_dist(2, 1000);
    const long a = a_dist(rng);
    const long b = std::uniform_int_distribution<long>(1, a - 1)(rng);
    const long c = std::uniform_int_distribution<long>(0, b - 1)(rng);
    const long d = std::uniform_int_distribution<long>(0, b)(rng);
    if (!check_binom_inequalities(a, b, c, d).all_pass()) ++failures;
  }
  int gamma_failures = 0, grid = 0;
  double tightest = 0;
  for (int a = 1; a <= 10; ++a) {
    for (int tenth = 1; tenth <= 50; ++tenth) {
      const GammaSumReport r = check_gamma_sum(a, tenth / 10.0, 2.0);
      ++grid;
      tightest = std::max(tightest, r.tightest_c);
      if (!r.pass) ++gamma_failures;
    }
  }
  return {12, fmt::format("binomial inequalities on {} tuples; Gamma-sum bound with C=2 on a in 1..10, b in 0.1..5", cases),
          failures == 0 && gamma_failures == 0,
          fmt::format("{} binomial failures; {} grid points, {} failures, tightest C = {:.4f}", failures, grid,
                      gamma_failures, tightest)};
}

}  // namespace

std::vector<CriterionResult> run_verification(const VerifyOptions& opts) {
  using Fn = CriterionResult (*)(const Context&);
  const Fn criteria[] = {oracle_equivalence, pinned_values, distinct_parts_bound, cameron_erdos_trend,
                         window_lower_bound, freiman_exhaustive, b_set_bound, span_identity,
                         janson_ingredients, restricted_partition_tables, sampler_uniformity, inequality_sweeps};
  Context ctx(opts);
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = criteria[i](ctx);
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (opts.on_result) opts.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sumfree
