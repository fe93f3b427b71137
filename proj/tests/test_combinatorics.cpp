#include <doctest.h>

#include "oracles.hpp"
#include "permlab/combinatorics.hpp"
#include "permlab/errors.hpp"

using namespace permlab;

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  BigCount f = 1;
  for (int k = 2; k <= 20; ++k) f *= k;
  CHECK(factorial(20) == f);
  CHECK(factorial(20).str() == "2432902008176640000");
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("derangements") {
  CHECK(derangements(0) == 1);
  CHECK(derangements(1) == 0);
  CHECK(derangements(4) == 9);
  CHECK(derangements(6) == 265);
  for (std::size_t n = 0; n <= 8; ++n) {
    std::uint64_t free_of_fixed = 0;
    for (const auto& p : oracle::all_permutations(n)) free_of_fixed += oracle::fixed_points(p) == 0;
    CHECK(derangements(n) == free_of_fixed);
  }
  for (std::size_t n = 1; n <= 60; ++n) CHECK(derangements(n) == nearest_integer_factorial_over_e(n));
}

TEST_CASE("rencontres numbers") {
  CHECK(rencontres(4, 1) == 8);
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(rencontres(n, n) == 1);
    CHECK(rencontres(n, n - 1) == 0);
  }
  CHECK_THROWS_AS(rencontres(3, 4), Error);
  for (std::size_t n = 0; n <= 8; ++n) {
    std::vector<std::uint64_t> by_r(n + 1, 0);
    for (const auto& p : oracle::all_permutations(n)) ++by_r[oracle::fixed_points(p)];
    for (std::size_t r = 0; r <= n; ++r) CHECK(rencontres(n, r) == by_r[r]);
  }
  for (std::size_t n = 1; n <= 30; ++n) {
    BigCount total = 0, weighted = 0;
    for (std::size_t r = 0; r <= n; ++r) {
      total += rencontres(n, r);
      weighted += rencontres(n, r) * r;
      CHECK(rencontres_upper_bound_holds(n, r));
      CHECK(rencontres(n, r) * factorial(r) <= factorial(n));
    }
    CHECK(total == factorial(n));
    CHECK(weighted == factorial(n));
  }
  CHECK(rencontres_upper_bound_holds(20, 5));
}

TEST_CASE("shift count pmf") {
  CHECK(shift_count_pmf(4, 1) == ExactProb(1, 3));
  CHECK(shift_count_pmf(6, 6) == ExactProb(1, 720));
  Rational total = 0;
  for (std::size_t k = 0; k <= 5; ++k) total += shift_count_pmf(5, k).value();
  CHECK(total == 1);
  try {
    shift_count_pmf(4, 5);
    FAIL("expected KOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::KOutOfRange);
  }
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto perms = oracle::all_permutations(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::uint64_t> by_k(n + 1, 0);
      for (const auto& p : perms) ++by_k[oracle::shift_counts(p)[j]];
      for (std::size_t k = 0; k <= n; ++k) CHECK(shift_count_pmf(n, k) == ExactProb(by_k[k], perms.size()));
    }
  }
}

TEST_CASE("ExactProb normalises and validates") {
  const ExactProb p(6, 24);
  CHECK(p.str() == "1/4");
  CHECK(p.to_double() == doctest::Approx(0.25));
  CHECK(ExactProb(0, 5).str() == "0/1");
  CHECK_THROWS_AS(ExactProb(3, 2), Error);
  CHECK_THROWS_AS(ExactProb(1, 0), Error);
  CHECK(ExactProb(1, 3) < ExactProb(1, 2));
}

TEST_CASE("e bracket and k(n)") {
  for (std::size_t m = 2; m <= 20; ++m) {
    const auto b = e_bounds(m);
    CHECK(b.lo < b.hi);
    CHECK(b.lo.convert_to<double>() <= 2.718281828459045);
    CHECK(b.hi.convert_to<double>() >= 2.718281828459045);
  }
  CHECK(k_of_n(6) == 1);
  CHECK(k_of_n(10) == 1);
  CHECK(k_of_n(11) == 2);
  CHECK(k_of_n(52) == 3);
  CHECK(k_of_n(10'000) == 6);
  try {
    k_of_n(5);
    FAIL("expected NTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NTooSmall);
  }
}
