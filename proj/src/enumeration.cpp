#include "sumfree/enumeration.hpp"

#include <omp.h>

#include <array>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace sumfree {

StrataKey StrataKey::project(const Statistics& st, unsigned fields) {
  StrataKey key;
  key.size = st.m;
  if (fields & kStrataEll) key.ell = st.ell;
  if (fields & kStrataK) key.twice_k = st.twice_k;
  if (fields & kStrataA) key.twice_a = st.twice_a ? *st.twice_a : kUndefined;
  if (fields & kStrataOdd) key.odd = st.odd_flag ? 1 : 0;
  return key;
}

std::string to_string(CountMethod m) { return m == CountMethod::oracle ? "oracle" : "backtracking"; }

namespace {

constexpr std::uint64_t bit(int x) { return std::uint64_t{1} << x; }
constexpr std::uint64_t below(int x) { return x >= 64 ? ~std::uint64_t{0} : bit(x) - 1; }

std::uint64_t universe_mask(const CountQuery& q) {
  if (q.n < 1) throw std::invalid_argument("n must be positive");
  if (q.n > kMaxSearchN) throw std::invalid_argument("n exceeds the search limit of 63");
  if (!q.universe) return below(q.n + 1) & ~std::uint64_t{1};
  if (!q.universe->empty() && q.universe->max() > q.n) throw std::invalid_argument("universe must lie in [n]");
  return q.universe->with_bound(q.n).to_mask();
}

// Packs a StrataKey; every field is offset by 2 so the sentinels stay nonnegative.
std::uint64_t pack(const StrataKey& k) {
  auto f = [](std::int64_t v) { return static_cast<std::uint64_t>(v + 2); };
  return f(k.size) | (f(k.ell) << 8) | (f(k.twice_k) << 16) | (f(k.twice_a) << 32) | (f(k.odd) << 44);
}

StrataKey unpack(std::uint64_t p) {
  auto f = [](std::uint64_t v) { return static_cast<std::int64_t>(v) - 2; };
  StrataKey k;
  k.size = static_cast<int>(f(p & 0xff));
  k.ell = f((p >> 8) & 0xff);
  k.twice_k = f((p >> 16) & 0xffff);
  k.twice_a = f((p >> 32) & 0xfff);
  k.odd = f((p >> 44) & 0xf);
  return k;
}

struct Tally {
  std::array<std::uint64_t, 65> by_size{};
  std::unordered_map<std::uint64_t, std::uint64_t> strata;
  std::uint64_t nodes = 0;
};

// Chosen elements are added in decreasing order; `forbidden` holds every
// smaller value that would complete a Schur triple with the chosen set.
struct State {
  std::uint64_t chosen = 0;
  std::uint64_t forbidden = 0;
  int size = 0;
  int ell = 0;
  std::int64_t twice_k = 0;
  int min_low = 0;  // smallest chosen x with 2x <= n; 0 when none
  bool all_odd = true;
};

struct Params {
  int n;
  std::uint64_t universe;
  Convention conv;
  std::optional<int> m;
  unsigned stratify;
  std::uint64_t node_budget;
};

inline State add(const State& s, int x, const Params& p) {
  State t = s;
  // y = z - x for chosen z; the y = x case (z = 2x) belongs to the convention rule.
  t.forbidden |= (s.chosen >> x) & below(x);
  if (p.conv.allow_equal_summands && x % 2 == 0) t.forbidden |= bit(x / 2);
  t.chosen |= bit(x);
  ++t.size;
  if (2 * x <= p.n) {
    ++t.ell;
    t.twice_k += p.n - 2 * x;
    t.min_low = x;
  }
  if (x % 2 == 0) t.all_odd = false;
  return t;
}

inline Statistics stats_of(const State& s, const Params& p) {
  Statistics st;
  st.m = s.size;
  st.ell = s.ell;
  st.twice_k = s.twice_k;
  if (s.min_low != 0) st.twice_a = p.n - 2 * s.min_low;
  st.odd_flag = s.all_odd;
  return st;
}

template <typename Emit>
class Kernel {
 public:
  Kernel(const Params& p, Tally& tally, std::atomic<bool>& abort, std::atomic<std::uint64_t>& nodes, Emit& emit)
      : p_(p), tally_(tally), abort_(abort), nodes_(nodes), emit_(emit) {}

  void visit(const State& s, std::uint64_t allowed_below) {
    if (++tally_.nodes % 4096 == 0) {
      if (nodes_.fetch_add(4096, std::memory_order_relaxed) + 4096 > p_.node_budget) abort_ = true;
      if (abort_.load(std::memory_order_relaxed)) return;
    }
    if (!p_.m || s.size == *p_.m) record(s);
    if (p_.m && s.size == *p_.m) return;
    std::uint64_t candidates = p_.universe & allowed_below & ~s.forbidden;
    if (p_.m && std::popcount(candidates) < *p_.m - s.size) return;
    while (candidates != 0) {
      int x = 63 - std::countl_zero(candidates);
      candidates &= ~bit(x);
      visit(add(s, x, p_), below(x));
      if (abort_.load(std::memory_order_relaxed)) return;
    }
  }

 private:
  void record(const State& s) {
    ++tally_.by_size[static_cast<std::size_t>(s.size)];
    if (p_.stratify != kStrataNone) {
      ++tally_.strata[pack(StrataKey::project(stats_of(s, p_), p_.stratify))];
    }
    emit_(s.chosen);
  }

  const Params& p_;
  Tally& tally_;
  std::atomic<bool>& abort_;
  std::atomic<std::uint64_t>& nodes_;
  Emit& emit_;
};

struct Task {
  State root;
  std::uint64_t allowed_below;
};

// Fixes membership of the top `depth` universe elements; each consistent
// choice becomes a task over the elements below them.
std::vector<Task> prefix_tasks(const Params& p, int depth) {
  std::vector<int> top;
  for (std::uint64_t u = p.universe; u != 0 && static_cast<int>(top.size()) < depth;) {
    int x = 63 - std::countl_zero(u);
    top.push_back(x);
    u &= ~bit(x);
  }
  const std::uint64_t rest = top.empty() ? ~std::uint64_t{0} : below(top.back());
  std::vector<Task> tasks;
  const std::uint64_t combos = std::uint64_t{1} << top.size();
  for (std::uint64_t c = 0; c < combos; ++c) {
    State s;
    bool ok = true;
    for (std::size_t i = 0; i < top.size() && ok; ++i) {
      if ((c >> i) & 1U) {
        if (s.forbidden & bit(top[i])) ok = false;
        else s = add(s, top[i], p);
      }
    }
    if (!ok || (p.m && s.size > *p.m)) continue;
    tasks.push_back({s, rest});
  }
  return tasks;
}

CountResult merge(const std::vector<Tally>& tallies, CountMethod method) {
  CountResult out;
  out.method = method;
  std::array<std::uint64_t, 65> sizes{};
  std::map<StrataKey, BigCount> strata;
  for (const auto& t : tallies) {
    for (std::size_t i = 0; i < sizes.size(); ++i) sizes[i] += t.by_size[i];
    for (const auto& [k, v] : t.strata) strata[unpack(k)] += BigCount(static_cast<unsigned long>(v));
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) continue;
    BigCount c(static_cast<unsigned long>(sizes[i]));
    out.by_size[static_cast<int>(i)] = c;
    out.total += c;
  }
  out.strata = std::move(strata);
  return out;
}

Params make_params(const CountQuery& q, const SearchOptions& opts) {
  Params p{q.n, universe_mask(q), q.convention, q.m, q.stratify, opts.node_budget};
  if (p.m && *p.m < 0) throw std::invalid_argument("m must be nonnegative");
  return p;
}

struct NoEmit {
  void operator()(std::uint64_t) const {}
};

void raise_if_aborted(bool aborted, std::size_t done, std::size_t total, std::uint64_t nodes) {
  if (!aborted) return;
  throw BudgetExceeded("search budget exceeded after " + std::to_string(done) + "/" + std::to_string(total) +
                           " subtrees and " + std::to_string(nodes) + " nodes",
                       BigCount(static_cast<unsigned long>(nodes)));
}

CountResult run_search(const CountQuery& q, const SearchOptions& opts, bool parallel) {
  const auto start = std::chrono::steady_clock::now();
  const Params p = make_params(q, opts);
  std::atomic<bool> abort{false};
  std::atomic<std::uint64_t> nodes{0};
  NoEmit emit;

  int workers = parallel ? (opts.threads > 0 ? opts.threads : omp_get_max_threads()) : 1;
  int depth = 0;
  if (parallel) {
    while ((std::uint64_t{1} << depth) < 64ULL * static_cast<std::uint64_t>(workers) && depth < 20) ++depth;
  }
  const std::vector<Task> tasks = prefix_tasks(p, depth);
  std::vector<Tally> tallies(tasks.size());
  std::atomic<std::size_t> done{0};

  const auto count = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    auto idx = static_cast<std::size_t>(i);
    if (abort.load(std::memory_order_relaxed)) continue;
    Kernel<NoEmit> kernel(p, tallies[idx], abort, nodes, emit);
    kernel.visit(tasks[idx].root, tasks[idx].allowed_below);
    if (!abort.load()) ++done;
  }
  raise_if_aborted(abort.load(), done.load(), tasks.size(), nodes.load());

  CountResult out = merge(tallies, CountMethod::backtracking);
  out.elapsed = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace

CountResult count_sum_free_serial(const CountQuery& q, const SearchOptions& opts) {
  return run_search(q, opts, false);
}

CountResult count_sum_free(const CountQuery& q, const SearchOptions& opts) {
  return run_search(q, opts, true);
}

CountResult count_oracle(const CountQuery& q) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t universe = universe_mask(q);
  std::vector<int> elems;
  for (std::uint64_t u = universe; u != 0; u &= u - 1) elems.push_back(std::countr_zero(u));
  if (elems.size() > static_cast<std::size_t>(kMaxOracleUniverse)) {
    throw std::invalid_argument("oracle universe exceeds 24 elements");
  }
  std::array<std::uint64_t, 65> sizes{};
  std::map<StrataKey, std::uint64_t> strata;
  const std::uint64_t subsets = std::uint64_t{1} << elems.size();
  for (std::uint64_t sel = 0; sel < subsets; ++sel) {
    const int size = std::popcount(sel);
    if (q.m && size != *q.m) continue;
    std::uint64_t mask = 0;
    for (std::uint64_t r = sel; r != 0; r &= r - 1) mask |= bit(elems[static_cast<std::size_t>(std::countr_zero(r))]);
    const IntSet set = IntSet::from_mask(mask, q.n);
    if (!is_sum_free(set, q.convention)) continue;
    ++sizes[static_cast<std::size_t>(size)];
    if (q.stratify != kStrataNone) ++strata[StrataKey::project(statistics_of(set, q.n), q.stratify)];
  }
  CountResult out;
  out.method = CountMethod::oracle;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) continue;
    BigCount c(static_cast<unsigned long>(sizes[i]));
    out.by_size[static_cast<int>(i)] = c;
    out.total += c;
  }
  for (const auto& [k, v] : strata) out.strata[k] = BigCount(static_cast<unsigned long>(v));
  out.elapsed = std::chrono::steady_clock::now() - start;
  return out;
}

IntSet window_universe(int n, int a) {
  if (a < 0) throw std::invalid_argument("window offset must be nonnegative");
  const int lo = n / 2 + 1 - a;
  if (lo < 1) throw std::invalid_argument("window offset exceeds floor(n/2)");
  return IntSet::interval(lo, n, n);
}

WindowCount count_in_window(int n, int a, int m, const SearchOptions& opts) {
  WindowCount out;
  out.a = a;
  out.universe = window_universe(n, a);
  CountQuery q;
  q.n = n;
  q.m = m;
  q.universe = out.universe;
  out.count = count_sum_free(q, opts).total;
  out.subsets = binomial(static_cast<long>(out.universe.size()), m);
  out.probability = out.subsets == 0 ? 0.0 : mpq_class(out.count, out.subsets).get_d();
  return out;
}

void enumerate_sum_free(const CountQuery& q, const std::function<void(const IntSet&)>& emit,
                        std::uint64_t stream_budget, const SearchOptions& opts) {
  const CountResult expected = count_sum_free(q, opts);
  if (expected.total > BigCount(static_cast<unsigned long>(stream_budget))) {
    throw BudgetExceeded("stream would exceed its budget", expected.total);
  }
  const Params p = make_params(q, opts);
  std::atomic<bool> abort{false};
  std::atomic<std::uint64_t> nodes{0};
  Tally tally;
  auto forward = [&](std::uint64_t mask) { emit(IntSet::from_mask(mask, q.n)); };
  Kernel<decltype(forward)> kernel(p, tally, abort, nodes, forward);
  kernel.visit(State{}, ~std::uint64_t{0});
  raise_if_aborted(abort.load(), 0, 1, nodes.load());
}

StratifiedCounts stratified_counts(int n, int m, Convention conv, const SearchOptions& opts) {
  CountQuery q;
  q.n = n;
  q.m = m;
  q.convention = conv;
  q.stratify = kStrataEll | kStrataK | kStrataOdd;
  const CountResult r = count_sum_free(q, opts);
  StratifiedCounts out;
  out.n = n;
  out.m = m;
  out.total = r.total;
  for (const auto& [key, count] : r.strata) {
    StrataCell cell{static_cast<int>(key.ell), key.twice_k};
    out.joint[cell] += count;
    if (key.odd == 1) out.odd_only[cell] += count;
  }
  return out;
}

}  // namespace sumfree
