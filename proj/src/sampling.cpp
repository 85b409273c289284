#include "sumfree/sampling.hpp"

#include <omp.h>

#include <cmath>
#include <random>

#include "sumfree/enumeration.hpp"

namespace sumfree {

namespace {

// Floyd's algorithm: a uniform m-subset of [n] as a bitmask.
std::uint64_t draw_subset(int n, int m, std::mt19937_64& rng) {
  std::uint64_t mask = 0;
  for (int j = n - m + 1; j <= n; ++j) {
    std::uniform_int_distribution<int> pick(1, j);
    int t = pick(rng);
    mask |= (mask >> t) & 1U ? (std::uint64_t{1} << j) : (std::uint64_t{1} << t);
  }
  return mask;
}

double estimate_acceptance(int n, int m, std::uint64_t seed, const SampleOptions& opts) {
  const BigCount subsets = binomial(n, m);
  if (subsets == 0) return 0;
  if (n <= opts.exact_limit) {
    CountQuery q;
    q.n = n;
    q.m = m;
    const BigCount good = count_sum_free(q).total;
    return mpq_class(good, subsets).get_d();
  }
  // Pilot run on its own stream.
  std::seed_seq seq{seed, std::uint64_t{0xfeed}};
  std::mt19937_64 rng(seq);
  constexpr int kPilot = 200'000;
  int hits = 0;
  for (int i = 0; i < kPilot; ++i) hits += is_sum_free_mask(draw_subset(n, m, rng)) ? 1 : 0;
  return static_cast<double>(hits) / kPilot;
}

template <typename Map>
Quantiles quantiles_of(const Map& weights) {
  double total = 0;
  for (const auto& [v, w] : weights) total += w;
  Quantiles q;
  auto at = [&](double frac) {
    double acc = 0;
    for (const auto& [v, w] : weights) {
      acc += w;
      if (acc >= frac * total - 1e-12) return static_cast<double>(v);
    }
    return weights.empty() ? 0.0 : static_cast<double>(weights.rbegin()->first);
  };
  q.q25 = at(0.25);
  q.median = at(0.5);
  q.q75 = at(0.75);
  return q;
}

}  // namespace

SampleReport sample_uniform(int n, int m, std::uint64_t count, std::uint64_t seed, const SampleOptions& opts) {
  if (n < 1 || n > kMaxSearchN) throw std::invalid_argument("sampling needs 1 <= n <= 63");
  if (m < 0 || m > n) throw std::invalid_argument("sampling needs 0 <= m <= n");
  SampleReport r;
  r.n = n;
  r.m = m;
  r.sample_count = count;
  r.seed = seed;
  r.workers = std::max(1, opts.workers);
  r.acceptance_estimate = estimate_acceptance(n, m, seed, opts);
  if (r.acceptance_estimate < opts.min_acceptance) {
    throw InfeasibleSampling("acceptance rate below " + std::to_string(opts.min_acceptance) +
                             "; use exact enumeration (count/strata) instead");
  }

  std::vector<std::vector<std::uint64_t>> accepted(static_cast<std::size_t>(r.workers));
  std::vector<std::uint64_t> draws(static_cast<std::size_t>(r.workers), 0);
#pragma omp parallel for schedule(static, 1) num_threads(r.workers)
  for (int w = 0; w < r.workers; ++w) {
    const auto wi = static_cast<std::uint64_t>(w);
    const std::uint64_t target = count / static_cast<std::uint64_t>(r.workers) +
                                 (wi < count % static_cast<std::uint64_t>(r.workers) ? 1 : 0);
    std::seed_seq seq{seed, wi};
    std::mt19937_64 rng(seq);
    auto& out = accepted[static_cast<std::size_t>(w)];
    out.reserve(target);
    while (out.size() < target) {
      std::uint64_t s = draw_subset(n, m, rng);
      ++draws[static_cast<std::size_t>(w)];
      if (is_sum_free_mask(s)) out.push_back(s);
    }
  }

  std::map<int, std::uint64_t> ell_weights;
  std::map<std::int64_t, std::uint64_t> twice_k_weights;
  for (std::size_t w = 0; w < accepted.size(); ++w) {
    r.draws += draws[w];
    for (std::uint64_t s : accepted[w]) {
      const Statistics st = statistics_of(IntSet::from_mask(s, n), n);
      ++r.histogram[{st.ell, st.twice_k, st.odd_flag}];
      ++r.set_frequencies[s];
      ++ell_weights[st.ell];
      ++twice_k_weights[st.twice_k];
    }
  }
  r.ell = quantiles_of(ell_weights);
  Quantiles tk = quantiles_of(twice_k_weights);
  r.k = {tk.q25 / 2, tk.median / 2, tk.q75 / 2};
  return r;
}

MRule MRule::parse(std::string_view text) {
  MRule r;
  auto number = [&](std::string_view rest) {
    std::string s(rest);
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number in m rule");
    return v;
  };
  if (text == "sqrt") r.kind = Kind::sqrt;
  else if (text == "half") r.kind = Kind::half;
  else if (text.starts_with("fixed:")) {
    r.kind = Kind::fixed;
    r.param = number(text.substr(6));
  } else if (text.starts_with("frac:")) {
    r.kind = Kind::frac;
    r.param = number(text.substr(5));
  } else {
    throw std::invalid_argument("unknown m rule '" + std::string(text) + "' (sqrt|half|fixed:K|frac:X)");
  }
  return r;
}

int MRule::apply(int n) const {
  switch (kind) {
    case Kind::sqrt: return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    case Kind::half: return (n + 1) / 2;
    case Kind::fixed: return static_cast<int>(param);
    case Kind::frac: return std::max(1, static_cast<int>(std::lround(param * n)));
  }
  return 1;
}

std::string MRule::to_string() const {
  switch (kind) {
    case Kind::sqrt: return "sqrt";
    case Kind::half: return "half";
    case Kind::fixed: return "fixed:" + std::to_string(static_cast<int>(param));
    case Kind::frac: return "frac:" + std::to_string(param);
  }
  return "?";
}

std::vector<TrendRow> structure_trend(const std::vector<int>& n_list, const MRule& rule, std::uint64_t count,
                                      std::uint64_t seed, const TrendOptions& opts) {
  std::vector<TrendRow> rows;
  for (int n : n_list) {
    TrendRow row;
    row.n = n;
    row.m = rule.apply(n);
    std::map<int, double> ell_w;
    std::map<std::int64_t, double> twice_k_w;
    if (n <= opts.exact_limit) {
      row.exact = true;
      const StratifiedCounts sc = stratified_counts(n, row.m);
      for (const auto& [cell, c] : sc.joint) {
        double w = c.get_d();
        ell_w[cell.ell] += w;
        twice_k_w[cell.twice_k] += w;
      }
    } else {
      const SampleReport rep = sample_uniform(n, row.m, count, seed, opts.sampling);
      for (const auto& [cell, c] : rep.histogram) {
        ell_w[cell.ell] += static_cast<double>(c);
        twice_k_w[cell.twice_k] += static_cast<double>(c);
      }
    }
    double total = 0;
    for (const auto& [e, w] : ell_w) total += w;
    for (const auto& [e, w] : ell_w) row.ell_distribution[e] = total > 0 ? w / total : 0;
    const double nm = static_cast<double>(n) / row.m;
    row.scaled_ell_median = quantiles_of(ell_w).median / nm;
    row.scaled_k_median = quantiles_of(twice_k_w).median / 2 / (nm * nm * nm);
    rows.push_back(std::move(row));
  }
  if (!rows.empty()) {
    const double f = opts.window_factor;
    const double ref_ell = rows.front().scaled_ell_median, ref_k = rows.front().scaled_k_median;
    auto inside = [f](double v, double ref) { return ref == 0 ? v <= 1.0 : (v >= ref / f && v <= ref * f); };
    for (auto& r : rows) {
      r.ell_in_window = inside(r.scaled_ell_median, ref_ell);
      r.k_in_window = inside(r.scaled_k_median, ref_k);
    }
  }
  return rows;
}

}  // namespace sumfree
