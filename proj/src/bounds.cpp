#include "sumfree/bounds.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sumfree {

LogValue LogValue::of(double value) {
  if (value < 0 || std::isnan(value)) throw std::domain_error("LogValue needs a nonnegative value");
  if (value == 0) return zero();
  return LogValue(std::log(value));
}

LogValue LogValue::of(const BigCount& value) {
  if (value < 0) throw std::domain_error("LogValue needs a nonnegative value");
  if (value == 0) return zero();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return LogValue(std::log(mant) + static_cast<double>(exp) * std::numbers::ln2);
}

double LogValue::log() const { return zero_ ? -std::numeric_limits<double>::infinity() : log_; }
double LogValue::value() const { return zero_ ? 0.0 : std::exp(log_); }
double LogValue::log2() const { return log() / std::numbers::ln2; }

LogValue LogValue::operator*(const LogValue& o) const {
  if (zero_ || o.zero_) return zero();
  return LogValue(log_ + o.log_);
}

LogValue LogValue::operator/(const LogValue& o) const {
  if (o.zero_) throw std::domain_error("division by zero LogValue");
  if (zero_) return zero();
  return LogValue(log_ - o.log_);
}

LogValue LogValue::operator+(const LogValue& o) const {
  if (zero_) return o;
  if (o.zero_) return *this;
  double hi = std::max(log_, o.log_), lo = std::min(log_, o.log_);
  return LogValue(hi + std::log1p(std::exp(lo - hi)));
}

LogValue LogValue::pow(double exponent) const {
  if (zero_) return exponent == 0 ? LogValue(0.0) : zero();
  return LogValue(log_ * exponent);
}

bool LogValue::leq(const LogValue& other, double rel_tol) const {
  if (zero_) return true;
  if (other.zero_) return false;
  return log_ <= other.log_ + rel_tol * std::max(1.0, std::abs(other.log_));
}

std::string LogValue::to_string() const {
  if (zero_) return "0";
  std::ostringstream os;
  os.precision(12);
  os << "exp(" << log_ << ")";
  return os.str();
}

LogValue log_binom(double a, double b) {
  if (b < 0 || b > a) return LogValue::zero();
  return LogValue::from_log(std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1));
}

bool InequalityReport::all_pass() const {
  return std::all_of(lines.begin(), lines.end(), [](const InequalityLine& l) { return l.pass; });
}

InequalityReport check_binom_inequalities(long a, long b, long c, long d) {
  if (!(a > b && b > c && c >= 0)) throw std::invalid_argument("need a > b > c >= 0");
  if (d < 0 || d > b) throw std::invalid_argument("need 0 <= d <= b");
  const auto A = static_cast<double>(a), B = static_cast<double>(b), Cc = static_cast<double>(c),
             D = static_cast<double>(d);
  const LogValue full = log_binom(A, B);
  const LogValue shrink_b = LogValue::of(B / (A - B));
  const LogValue shrink_a = LogValue::of((A - Cc) / A);

  InequalityReport r;
  auto line = [&](std::string name, LogValue lhs, LogValue rhs) {
    bool pass = lhs.leq(rhs);
    r.lines.push_back({std::move(name), lhs, rhs, pass});
  };
  line("binom(a,b-c) <= (b/(a-b))^c binom(a,b)", log_binom(A, B - Cc), shrink_b.pow(Cc) * full);
  line("binom(a-c,b) <= ((a-c)/a)^b binom(a,b)", log_binom(A - Cc, B), shrink_a.pow(B) * full);
  line("binom(a-c,b-d) <= ((a-c)/a)^(b-d) (b/(a-b))^d binom(a,b)", log_binom(A - Cc, B - D),
       shrink_a.pow(B - D) * shrink_b.pow(D) * full);
  return r;
}

GammaSumReport check_gamma_sum(double a, double b, double constant) {
  if (a < 1 || b <= 0) throw std::invalid_argument("need a >= 1 and b > 0");
  GammaSumReport r;
  r.a = a;
  r.b = b;
  r.constant = constant;
  const double peak = a / b;
  double sum = 0;
  for (double k = 1;; k += 1) {
    double term = std::exp(a * std::log(k) - b * k);
    sum += term;
    if (k > peak && term < 1e-15 * sum) break;
  }
  r.sum = sum;
  r.gamma_term = std::exp(std::lgamma(a + 1) - (a + 1) * std::log(b));
  r.tightest_c = r.sum / r.gamma_term;
  r.pass = r.sum <= constant * r.gamma_term * (1 + kRelTol);
  return r;
}

namespace {

// Each row i lists the neighbours j ~ i through shared vertices.
LogValue delta_row(const JansonInput& in, const std::vector<std::vector<int>>& incidence, std::size_t i,
                   double log_p, std::vector<std::size_t>& stamp) {
  LogValue row = LogValue::zero();
  const IntSet& ui = in.family[i];
  for (int v : ui) {
    for (int j : incidence[static_cast<std::size_t>(v)]) {
      auto jj = static_cast<std::size_t>(j);
      if (jj == i || stamp[jj] == i + 1) continue;
      stamp[jj] = i + 1;
      const IntSet& uj = in.family[jj];
      std::size_t shared = ui.size() - ui.count_minus(uj);
      auto union_size = static_cast<double>(ui.size() + uj.size() - shared);
      row = row + LogValue::from_log(union_size * log_p);
    }
  }
  return row;
}

JansonQuantities finish(const std::vector<LogValue>& mu_terms, const std::vector<LogValue>& rows) {
  JansonQuantities q;
  for (const auto& t : mu_terms) q.mu = q.mu + t;
  for (const auto& r : rows) q.delta = q.delta + r;
  const double mu = q.mu.value();
  double first = -mu / 2;
  double log_bound = first;
  if (!q.delta.is_zero()) {
    // mu^2 / (2 Delta) in the log domain, then negated
    double second = -std::exp(2 * q.mu.log() - q.delta.log() - std::numbers::ln2);
    if (q.mu.is_zero()) second = 0;
    log_bound = std::max(first, second);
  }
  q.bound = LogValue::from_log(log_bound);
  return q;
}

struct Prepared {
  double log_p;
  std::vector<std::vector<int>> incidence;
  std::vector<LogValue> mu_terms;
};

Prepared prepare(const JansonInput& in) {
  if (in.ground_size <= 0) throw std::invalid_argument("ground set must be nonempty");
  if (in.m < 0 || in.m > in.ground_size) throw std::invalid_argument("need 0 <= m <= |X|");
  Prepared p;
  p.log_p = in.m == 0 ? -std::numeric_limits<double>::infinity()
                      : std::log(static_cast<double>(in.m) / static_cast<double>(in.ground_size));
  int top = 0;
  for (const auto& u : in.family) top = std::max(top, u.universe_bound());
  p.incidence.resize(static_cast<std::size_t>(top) + 1);
  for (std::size_t i = 0; i < in.family.size(); ++i) {
    for (int v : in.family[i]) p.incidence[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));
    const auto size = static_cast<double>(in.family[i].size());
    if (in.m == 0) p.mu_terms.push_back(size == 0 ? LogValue::of(1.0) : LogValue::zero());
    else p.mu_terms.push_back(LogValue::from_log(size * p.log_p));
  }
  return p;
}

}  // namespace

JansonQuantities janson_quantities_serial(const JansonInput& in) {
  Prepared p = prepare(in);
  std::vector<LogValue> rows(in.family.size());
  std::vector<std::size_t> stamp(in.family.size(), 0);
  if (in.m > 0) {
    for (std::size_t i = 0; i < in.family.size(); ++i) rows[i] = delta_row(in, p.incidence, i, p.log_p, stamp);
  }
  return finish(p.mu_terms, rows);
}

JansonQuantities janson_quantities(const JansonInput& in) {
  Prepared p = prepare(in);
  std::vector<LogValue> rows(in.family.size());
  const auto count = static_cast<std::int64_t>(in.family.size());
  if (in.m > 0) {
#pragma omp parallel
    {
      std::vector<std::size_t> stamp(in.family.size(), 0);
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < count; ++i) {
        auto idx = static_cast<std::size_t>(i);
        rows[idx] = delta_row(in, p.incidence, idx, p.log_p, stamp);
      }
    }
  }
  // Rows are summed in index order, so the result does not depend on scheduling.
  return finish(p.mu_terms, rows);
}

JansonInput schur_pair_family(int n, const IntSet& s, int m) {
  JansonInput in;
  in.ground_size = (n + 1) / 2;
  in.m = m;
  for (int x = 1; x <= n; x += 2) {
    for (int y = x + 2; y <= n; y += 2) {
      bool hit = s.contains(x + y) || s.contains(y - x);
      if (hit) in.family.push_back(IntSet(n, {x, y}));
    }
  }
  return in;
}

PairGraph build_pair_graph(int n, const IntSet& s, const IntSet& excluded) {
  PairGraph g;
  g.n = n;
  const int lo = n / 2 + 1;
  g.vertices = IntSet::interval(lo, n, n).minus(excluded);
  std::vector<int> degree(static_cast<std::size_t>(n) + 1, 0);
  for (int step : s) {
    for (int x = lo; x + step <= n; ++x) {
      if (!g.vertices.contains(x) || !g.vertices.contains(x + step)) continue;
      g.edges.emplace_back(x, x + step);
      ++degree[static_cast<std::size_t>(x)];
      ++degree[static_cast<std::size_t>(x + step)];
    }
  }
  g.max_degree = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
  return g;
}

Theorem parse_theorem(std::string_view name) {
  if (name == "CEthm") return Theorem::ce_count;
  if (name == "S+S") return Theorem::small_sumset;
  if (name == "S+S2") return Theorem::small_sumset_linear;
  if (name == "parts") return Theorem::distinct_parts;
  if (name == "conj") return Theorem::conjecture;
  throw std::invalid_argument("unknown bound '" + std::string(name) + "' (CEthm|S+S|S+S2|parts|conj)");
}

std::string_view theorem_name(Theorem t) {
  switch (t) {
    case Theorem::ce_count: return "CEthm";
    case Theorem::small_sumset: return "S+S";
    case Theorem::small_sumset_linear: return "S+S2";
    case Theorem::distinct_parts: return "parts";
    case Theorem::conjecture: return "conj";
  }
  return "?";
}

LogValue theorem_rhs(Theorem t, const RhsParams& p) {
  using std::numbers::e;
  using std::numbers::ln2;
  switch (t) {
    case Theorem::ce_count:
      // 2^{Cn/m} binom(ceil(n/2), m)
      return LogValue::from_log(p.C * p.n / p.m * ln2) * log_binom(std::ceil(p.n / 2), p.m);
    case Theorem::small_sumset:
      // 2^{delta ell} (2cek / 3ell^2)^ell
      return LogValue::from_log(p.delta * p.ell * ln2 +
                                p.ell * std::log(2 * p.c * e * p.k / (3 * p.ell * p.ell)));
    case Theorem::small_sumset_linear:
      // 2^{delta ell} ((4 lambda - 3) e / 6)^ell
      return LogValue::from_log(p.delta * p.ell * ln2 + p.ell * std::log((4 * p.lambda - 3) * e / 6));
    case Theorem::distinct_parts:
      // (e^2 k / ell^2)^ell
      return LogValue::from_log(p.ell * std::log(e * e * p.k / (p.ell * p.ell)));
    case Theorem::conjecture:
      // 2^{delta m} binom(N/2, m)
      return LogValue::from_log(p.delta * p.m * ln2) * log_binom(p.N / 2, p.m);
  }
  throw std::invalid_argument("unknown bound");
}

LogValue theorem_rhs(std::string_view name, const RhsParams& p) { return theorem_rhs(parse_theorem(name), p); }

std::optional<double> empirical_constant(int n, int m, const BigCount& count) {
  if (count <= 0 || m <= 0) return std::nullopt;
  const BigCount extremal = binomial((n + 1) / 2, m);
  if (extremal == 0) return std::nullopt;
  const double log2_ratio = (LogValue::of(count) / LogValue::of(extremal)).log2();
  return static_cast<double>(m) / static_cast<double>(n) * log2_ratio;
}

double hardy_ramanujan_ratio(int k, const BigCount& pk) {
  const double kk = k;
  const double log_ratio = LogValue::of(pk).log() + std::log(4 * kk * std::sqrt(3.0)) -
                           std::numbers::pi * std::sqrt(2 * kk / 3);
  return std::exp(log_ratio);
}

}  // namespace sumfree
