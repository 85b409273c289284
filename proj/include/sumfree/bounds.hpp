#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumfree/common.hpp"
#include "sumfree/intset.hpp"

namespace sumfree {

inline constexpr double kRelTol = 1e-9;

/// Positive real held as its natural log, or exact zero.
class LogValue {
 public:
  LogValue() = default;
  static LogValue zero() { return LogValue(); }
  static LogValue from_log(double log_value) { return LogValue(log_value); }
  /// Throws std::domain_error for negative input.
  static LogValue of(double value);
  static LogValue of(const BigCount& value);

  bool is_zero() const { return zero_; }
  /// -inf for zero.
  double log() const;
  double value() const;
  double log2() const;

  LogValue operator*(const LogValue& o) const;
  LogValue operator/(const LogValue& o) const;
  LogValue operator+(const LogValue& o) const;
  LogValue pow(double exponent) const;

  /// this <= other up to relative tolerance on the log scale.
  bool leq(const LogValue& other, double rel_tol = kRelTol) const;

  std::string to_string() const;

 private:
  explicit LogValue(double l) : log_(l), zero_(false) {}
  double log_ = 0.0;
  bool zero_ = true;
};

/// ln C(a, b) through lgamma; zero when b > a.
LogValue log_binom(double a, double b);

struct InequalityLine {
  std::string name;
  LogValue lhs;
  LogValue rhs;
  bool pass = false;
};

struct InequalityReport {
  std::vector<InequalityLine> lines;
  bool all_pass() const;
};

/// Both forms of the binomial shrink inequalities and their combination.
/// Requires a > b > c >= 0 and 0 <= d <= b.
InequalityReport check_binom_inequalities(long a, long b, long c, long d);

struct GammaSumReport {
  double a = 0, b = 0;
  double sum = 0;          // sum_{k>=1} k^a e^{-bk}
  double gamma_term = 0;   // Gamma(a+1) / b^(a+1)
  double tightest_c = 0;   // sum / gamma_term
  double constant = 2.0;
  bool pass = false;
};

GammaSumReport check_gamma_sum(double a, double b, double constant = 2.0);

struct JansonInput {
  std::vector<IntSet> family;
  int ground_size = 0;
  int m = 0;
};

struct JansonQuantities {
  LogValue mu;
  LogValue delta;
  LogValue bound;  // max(e^{-mu/2}, e^{-mu^2/(2 delta)}), without the absolute constant
};

JansonQuantities janson_quantities(const JansonInput& in);
JansonQuantities janson_quantities_serial(const JansonInput& in);

/// Pairs {x, y} of odd numbers in [n] with x + y in S or y - x in S.
JansonInput schur_pair_family(int n, const IntSet& s, int m);

struct PairGraph {
  int n = 0;
  IntSet vertices;
  std::vector<std::pair<int, int>> edges;
  int max_degree = 0;
  std::size_t edge_count() const { return edges.size(); }
};

/// Vertices {floor(n/2)+1..n} minus `excluded`; edges {x, x+s} for s in S.
PairGraph build_pair_graph(int n, const IntSet& s, const IntSet& excluded);

enum class Theorem { ce_count, small_sumset, small_sumset_linear, distinct_parts, conjecture };

/// Names: CEthm, S+S, S+S2, parts, conj.
Theorem parse_theorem(std::string_view name);
std::string_view theorem_name(Theorem t);

struct RhsParams {
  double n = 0, m = 0, C = 0;
  double k = 0, ell = 0, c = 0, delta = 0, lambda = 0;
  double N = 0;
};

LogValue theorem_rhs(Theorem t, const RhsParams& p);
LogValue theorem_rhs(std::string_view name, const RhsParams& p);

/// (m/n) log2(count / C(ceil(n/2), m)); empty when count or the binomial is zero.
std::optional<double> empirical_constant(int n, int m, const BigCount& count);

/// p(k) 4k sqrt(3) e^{-pi sqrt(2k/3)}.
double hardy_ramanujan_ratio(int k, const BigCount& pk);

}  // namespace sumfree
