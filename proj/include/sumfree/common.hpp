#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sumfree {

/// Exact nonnegative count.
using BigCount = mpz_class;

inline BigCount big(std::uint64_t v) {
  BigCount b;
  mpz_import(b.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return b;
}

inline std::string to_decimal(const BigCount& v) { return v.get_str(10); }

/// Exact binomial coefficient; zero when b < 0 or b > a.
inline BigCount binomial(long a, long b) {
  BigCount out = 0;
  if (a < 0 || b < 0 || b > a) return out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

/// Reduced nonnegative-denominator fraction.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Ratio() = default;
  Ratio(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// An exact enumeration would exceed its configured candidate budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, BigCount estimate)
      : std::runtime_error(what + " (estimated " + to_decimal(estimate) + " candidates)"),
        estimate_(std::move(estimate)) {}
  const BigCount& estimate() const { return estimate_; }

 private:
  BigCount estimate_;
};

}  // namespace sumfree
