#include "permlab/combinatorics.hpp"

#include <mutex>
#include <vector>

#include "permlab/errors.hpp"

namespace permlab {

ExactProb::ExactProb(const BigCount& numerator, const BigCount& denominator) {
  require(denominator > 0, Errc::InvalidInput, "probability denominator must be positive");
  require(numerator >= 0 && numerator <= denominator, Errc::InvalidInput,
          "probability " + numerator.str() + "/" + denominator.str() + " outside [0, 1]");
  const BigCount g = boost::multiprecision::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

ExactProb::ExactProb(const Rational& value)
    : ExactProb(boost::multiprecision::numerator(value), boost::multiprecision::denominator(value)) {}

double ExactProb::to_double() const { return value().convert_to<double>(); }

std::string ExactProb::str() const { return num_.str() + "/" + den_.str(); }

std::strong_ordering operator<=>(const ExactProb& a, const ExactProb& b) {
  const BigCount lhs = a.num_ * b.den_;
  const BigCount rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigCount factorial(std::size_t n) {
  BigCount f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

BigCount binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

BigCount derangements(std::size_t n) {
  // The table grows monotonically and is shared between threads.
  static std::mutex mutex;
  static std::vector<BigCount> table{1, 0};
  std::lock_guard lock(mutex);
  while (table.size() <= n) {
    const std::size_t m = table.size();
    table.push_back(BigCount(m - 1) * (table[m - 1] + table[m - 2]));
  }
  return table[n];
}

BigCount rencontres(std::size_t n, std::size_t r) {
  require(r <= n, Errc::ROutOfRange, "r = " + std::to_string(r) + " exceeds n = " + std::to_string(n));
  return binomial(n, r) * derangements(n - r);
}

ExactProb shift_count_pmf(std::size_t n, std::size_t k) {
  require(n >= 1, Errc::ParameterOutOfRange, "order must be positive");
  require(k <= n, Errc::KOutOfRange, "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  return ExactProb(rencontres(n, k), factorial(n));
}

RationalInterval e_bounds(std::size_t order) {
  Rational partial = 0;
  BigCount fact = 1;
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 1) fact *= k;
    partial += Rational(BigCount(1), fact);
  }
  fact *= order + 1;
  return {partial, partial + Rational(BigCount(3), fact)};
}

namespace {

BigCount floor_nonnegative(const Rational& x) {
  return boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
}

}  // namespace

BigCount nearest_integer_factorial_over_e(std::size_t n) {
  require(n >= 1, Errc::ParameterOutOfRange, "n!/e rounding identity needs n >= 1");
  const Rational f(factorial(n));
  const Rational half(BigCount(1), BigCount(2));
  // n!/e lies in [n!/hi, n!/lo]; refine until both ends round the same way.
  for (std::size_t order = n + 4;; order += 8) {
    const auto e = e_bounds(order);
    const BigCount low = floor_nonnegative(f / e.hi + half);
    const BigCount high = floor_nonnegative(f / e.lo + half);
    if (low == high) return low;
  }
}

std::size_t k_of_n(std::size_t n) {
  require(n >= 6, Errc::NTooSmall, "k(n) needs n >= 6, got " + std::to_string(n));
  const Rational target(static_cast<unsigned long long>(n));
  // 2e*k! never equals an integer, so each comparison is decided at some order.
  auto fits = [&](const BigCount& kfact) {
    for (std::size_t order = 8;; order *= 2) {
      const auto e = e_bounds(order);
      if (2 * e.hi * kfact <= target) return true;
      if (2 * e.lo * kfact > target) return false;
    }
  };
  std::size_t k = 0;
  BigCount next_fact = 1;  // (k+1)!
  while (fits(next_fact)) {
    ++k;
    next_fact *= k + 1;
  }
  return k;
}

bool rencontres_upper_bound_holds(std::size_t n, std::size_t r) {
  require(r <= n, Errc::ROutOfRange, "r = " + std::to_string(r) + " exceeds n = " + std::to_string(n));
  return rencontres(n, r) * factorial(r) <= factorial(n);
}

}  // namespace permlab
