#pragma once

#include <compare>
#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace permlab {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact probability p/q in lowest terms with 0 <= p <= q, q > 0.
class ExactProb {
 public:
  ExactProb() = default;
  ExactProb(const BigCount& numerator, const BigCount& denominator);
  explicit ExactProb(const Rational& value);

  const BigCount& numerator() const noexcept { return num_; }
  const BigCount& denominator() const noexcept { return den_; }
  Rational value() const { return Rational(num_, den_); }
  double to_double() const;
  /// "p/q"
  std::string str() const;

  friend bool operator==(const ExactProb&, const ExactProb&) = default;
  friend std::strong_ordering operator<=>(const ExactProb& a, const ExactProb& b);

 private:
  BigCount num_{0};
  BigCount den_{1};
};

BigCount factorial(std::size_t n);
BigCount binomial(std::size_t n, std::size_t k);

/// D_n via D_n = (n-1)(D_{n-1} + D_{n-2}), D_0 = 1, D_1 = 0.
BigCount derangements(std::size_t n);

/// D_{n,r} = C(n, r) * D_{n-r}: permutations of order n with exactly r fixed points.
BigCount rencontres(std::size_t n, std::size_t r);

/// Pr[S_j = k] = D_{n,k} / n! for a uniform permutation of order n, any j.
ExactProb shift_count_pmf(std::size_t n, std::size_t k);

/// Closed rational bracket [lo, hi] containing e.
struct RationalInterval {
  Rational lo;
  Rational hi;
};

/// lo = sum_{k<=order} 1/k!, hi = lo + 3/(order+1)!.
RationalInterval e_bounds(std::size_t order);

/// Nearest integer to n!/e, decided with exact bracketing of e (n >= 1).
BigCount nearest_integer_factorial_over_e(std::size_t n);

/// Largest k with 2e * k! <= n (n >= 6).
std::size_t k_of_n(std::size_t n);

/// D_{n,r} <= n!/r!, decided with integers.
bool rencontres_upper_bound_holds(std::size_t n, std::size_t r);

}  // namespace permlab
