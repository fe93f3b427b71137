#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "permlab/combinatorics.hpp"
#include "permlab/errors.hpp"
#include "permlab/structure_stats.hpp"

using namespace permlab;

namespace {

using oracle::Mask;
using oracle::compatible_oracle;
using oracle::feasible_oracle;
using oracle::fixed_and_shifted_table;
using oracle::mask_of;

IndexSet set_of(std::size_t n, const std::vector<std::size_t>& v) { return IndexSet(n, v); }

}  // namespace

TEST_CASE("index sets and shifts") {
  CHECK(shift_set(set_of(5, {0, 1}), 0) == set_of(5, {0, 1}));
  CHECK(shift_set(set_of(5, {4}), 1) == set_of(5, {0}));
  CHECK(shift_set(set_of(5, {0, 2}), 3) == set_of(5, {0, 3}));
  CHECK(shift_set(set_of(5, {0}), -1) == set_of(5, {4}));
  CHECK(set_of(5, {3, 1}).elements() == std::vector<std::size_t>{1, 3});
  CHECK_THROWS_AS(set_of(5, {1, 1}), Error);
  CHECK_THROWS_AS(set_of(5, {5}), Error);
  CHECK(parse_index_set(6, "4, 1") == set_of(6, {1, 4}));
  CHECK(parse_index_set(6, "") == IndexSet::empty(6));
}

TEST_CASE("compatibility and feasibility predicates") {
  CHECK(is_compatible(set_of(8, {0}), set_of(8, {2}), 1));
  CHECK_FALSE(is_compatible(set_of(8, {0}), set_of(8, {7}), 1));
  try {
    is_compatible(set_of(8, {0}), set_of(8, {2}), 8);
    FAIL("expected ShiftZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ShiftZero);
  }
  CHECK(is_feasible(IndexSet::empty(8), set_of(8, {0}), set_of(8, {2}), 1));
  CHECK_FALSE(is_feasible(set_of(8, {1, 5}), IndexSet::empty(8), IndexSet::empty(8), 4));
  CHECK(is_feasible(set_of(10, {5, 7}), set_of(10, {0}), set_of(10, {2}), 1));
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto subsets = oracle::small_subsets(n, 2);
    for (std::size_t s = 1; s < n; ++s)
      for (const auto& I : subsets)
        for (const auto& J : subsets) {
          CHECK(is_compatible(set_of(n, I), set_of(n, J), s) == compatible_oracle(mask_of(I), mask_of(J), n, s));
          for (const auto& K : subsets)
            CHECK(is_feasible(set_of(n, K), set_of(n, I), set_of(n, J), s) ==
                  feasible_oracle(mask_of(K), mask_of(I), mask_of(J), n, s));
        }
  }
}

TEST_CASE("counts on the documented examples") {
  CHECK(count_phi_star(set_of(6, {0}), set_of(6, {1}), 2) == 24);
  CHECK(count_phi_star(set_of(6, {3}), set_of(6, {1}), 2) == 0);
  CHECK(count_phi_star(IndexSet::empty(6), IndexSet::empty(6), 2) == 720);
  CHECK(count_P_set(set_of(10, {5, 7}), set_of(10, {0}), set_of(10, {2}), 1) == 2880);
  CHECK(p_set_closed_form(set_of(10, {5, 7}), set_of(10, {0}), set_of(10, {2})) == 2880);
  // Infeasible K (K meets K + s) at n = 8.
  const auto K = set_of(8, {4, 5});
  const auto I = set_of(8, {0});
  const auto J = set_of(8, {2});
  CHECK_FALSE(is_feasible(K, I, J, 1));
  CHECK(count_P_set(K, I, J, 1) < p_set_closed_form(K, I, J));
  CHECK(count_P_set(IndexSet::empty(7), set_of(7, {1}), set_of(7, {3}), 2) ==
        count_phi_star(set_of(7, {1}), set_of(7, {3}), 2));
  CHECK(enumerate_phi(set_of(4, {0}), set_of(4, {0}), 1) == 0);
  CHECK_THROWS_AS(enumerate_phi(IndexSet::empty(11), IndexSet::empty(11), 1), Error);
}

TEST_CASE("closed forms against enumeration, n <= 7, sets of size <= 2") {
  // Compatible pairs with an empty exact-match class exist only for n <= 4.
  std::size_t small_n_empty = 0;
  for (std::size_t n = 3; n <= 7; ++n) {
    const auto perms = oracle::all_permutations(n);
    const auto subsets = oracle::small_subsets(n, 2);
    for (std::size_t s = 1; s < n; ++s) {
      const auto table = fixed_and_shifted_table(n, s, perms);
      for (const auto& Iv : subsets)
        for (const auto& Jv : subsets) {
          const Mask I = mask_of(Iv), J = mask_of(Jv);
          const auto Is = set_of(n, Iv), Js = set_of(n, Jv);
          std::uint64_t at_least = 0;
          for (const auto& [key, count] : table)
            if ((key.first & I) == I && (key.second & J) == J) at_least += count;
          CHECK(count_phi_star(Is, Js, s) == at_least);
          const auto exact_it = table.find({I, J});
          const std::uint64_t exact = exact_it == table.end() ? 0 : exact_it->second;
          CHECK(enumerate_phi(Is, Js, s) == exact);
          if (compatible_oracle(I, J, n, s)) {
            if (n >= 5) CHECK(exact >= 1);
            else small_n_empty += exact == 0;
          }
          for (const auto& Kv : subsets) {
            const Mask K = mask_of(Kv);
            std::uint64_t pset = 0;
            for (const auto& [key, count] : table)
              if ((key.first & I) == I && (key.second & J) == J && (K & ~(key.first | key.second)) == 0) pset += count;
            const auto Ks = set_of(n, Kv);
            CHECK(count_P_set(Ks, Is, Js, s) == pset);
            if (feasible_oracle(K, I, J, n, s)) CHECK(p_set_closed_form(Ks, Is, Js) == pset);
          }
        }
    }
  }
  CHECK(small_n_empty == 28);
}

TEST_CASE("decomposition of the joint pmf over index sets, n <= 6") {
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto perms = oracle::all_permutations(n);
    for (std::size_t s = 1; s < n; ++s) {
      for (std::size_t t = 0; t <= n / 2; ++t) {
        BigCount total = 0;
        for (const auto& Iv : oracle::small_subsets(n, t)) {
          if (Iv.size() != t) continue;
          for (const auto& Jv : oracle::small_subsets(n, t)) {
            if (Jv.size() != t || (mask_of(Iv) & mask_of(Jv))) continue;
            total += enumerate_phi(set_of(n, Iv), set_of(n, Jv), s);
          }
        }
        // sigma(j) = j + s is shift class n - s; inversion maps it to class s.
        CHECK(ExactProb(total, factorial(n)) == joint_shift_pmf(n, 0, n - s, t));
        CHECK(ExactProb(total, factorial(n)) == joint_shift_pmf(n, 0, s, t));
      }
    }
  }
}

TEST_CASE("error-term ratio for compatible singletons at n = 10") {
  const double e2 = std::exp(-2.0);
  const auto count = enumerate_phi(set_of(10, {0}), set_of(10, {2}), 1);
  const double ratio = count.convert_to<double>() / factorial(8).convert_to<double>();
  CHECK(ratio >= 0.7 * e2);
  CHECK(ratio <= 1.3 * e2);
}

TEST_CASE("joint shift pmf") {
  CHECK(joint_shift_pmf(5, 0, 1, 5) == ExactProb(0, 1));
  CHECK_THROWS_AS(joint_shift_pmf(5, 2, 2, 1), Error);
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto table = joint_shift_table(n, 0, n - 1);
    Rational total = 0;
    for (std::size_t a = 0; a <= n; ++a) {
      Rational row = 0;
      for (std::size_t b = 0; b <= n; ++b) row += table[a][b].value();
      CHECK(row == shift_count_pmf(n, a).value());
      total += row;
    }
    CHECK(total == 1);
  }
  const auto perms = oracle::all_permutations(8);
  std::uint64_t both = 0;
  for (const auto& p : perms) {
    const auto c = oracle::shift_counts(p);
    both += c[0] == 1 && c[1] == 1;
  }
  CHECK(joint_shift_pmf(8, 0, 1, 1) == ExactProb(both, perms.size()));
}

TEST_CASE("compatible pair probability") {
  // Oracle: ordered disjoint pairs of 2-subsets of [5], s = 1.
  std::uint64_t pairs = 0, good = 0;
  for (const auto& I : oracle::small_subsets(5, 2))
    for (const auto& J : oracle::small_subsets(5, 2)) {
      if (I.size() != 2 || J.size() != 2 || (mask_of(I) & mask_of(J))) continue;
      ++pairs;
      good += compatible_oracle(mask_of(I), mask_of(J), 5, 1);
    }
  const auto exact = compatible_pair_stats(5, 2, 1, EstimateMode::Exact, 0, 0);
  REQUIRE(exact.exact.has_value());
  CHECK(*exact.exact == ExactProb(good, pairs));

  const auto big = compatible_pair_stats(100, 1, 1, EstimateMode::Sampled, 20000, 5);
  CHECK(big.theory_bound == doctest::Approx(std::pow(1 - 4.0 / 98, 2)));
  CHECK(big.estimate >= big.theory_bound - 3 * big.std_err);

  const auto a = compatible_pair_stats(40, 3, 2, EstimateMode::Sampled, 100000, 1);
  const auto b = compatible_pair_stats(40, 3, 2, EstimateMode::Sampled, 100000, 2);
  CHECK(std::abs(a.estimate - b.estimate) <= 3 * std::hypot(a.std_err, b.std_err));
  const auto a4 = compatible_pair_stats(40, 3, 2, EstimateMode::Sampled, 100000, 1, 4);
  CHECK(a4.hits == a.hits);
  CHECK_THROWS_AS(compatible_pair_stats(4, 2, 1, EstimateMode::Sampled, 10, 1), Error);
}

TEST_CASE("feasible set probability") {
  const auto [I, J] = canonical_compatible_pair(12, 1, 1);
  CHECK(I == set_of(12, {0}));
  CHECK(J == set_of(12, {1}));
  CHECK(canonical_compatible_pair(100, 2, 3).first == set_of(100, {0, 1}));
  const auto [I1, J1] = canonical_compatible_pair(100, 2, 1);
  CHECK(I1 == set_of(100, {0, 2}));
  CHECK(is_compatible(I1, J1, 1));
  CHECK(is_compatible(I, J, 1));
  CHECK(feasible_set_stats(30, 2, 0, 1, EstimateMode::Sampled, 100, 1).estimate == 1.0);
  std::uint64_t total = 0, good = 0;
  for (const auto& K : oracle::small_subsets(12, 2)) {
    if (K.size() != 2 || (mask_of(K) & (I.mask() | J.mask()))) continue;
    ++total;
    good += feasible_oracle(mask_of(K), static_cast<Mask>(I.mask()), static_cast<Mask>(J.mask()), 12, 1);
  }
  const auto exact = feasible_set_stats(12, 1, 2, 1, EstimateMode::Exact, 0, 0);
  REQUIRE(exact.exact.has_value());
  CHECK(*exact.exact == ExactProb(good, total));

  const auto big = feasible_set_stats(100, 2, 3, 1, EstimateMode::Sampled, 100000, 9);
  CHECK(big.theory_bound == doctest::Approx(std::pow(1 - 7.0 / 93, 3)));
  CHECK(big.estimate >= big.theory_bound);
  try {
    feasible_set_stats(12, 2, 3, 1, EstimateMode::Sampled, 10, 1);
    FAIL("expected HypothesisViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HypothesisViolated);
  }
}

TEST_CASE("indicator covariance") {
  const auto ex = covariance_exact(7, 1, 0, 3);
  REQUIRE(ex.cov_exact.has_value());
  const Rational marginal = shift_count_pmf(7, 1).value();
  CHECK(*ex.cov_exact == joint_shift_pmf(7, 0, 3, 1).value() - marginal * marginal);
  CHECK(ex.marginal_exact == shift_count_pmf(7, 1));
  CHECK(ex.mean_r == doctest::Approx(7 * marginal.convert_to<double>()));

  const auto mc = covariance_estimate(7, 1, 0, 3, 200000, 17);
  CHECK(std::abs(mc.cov - ex.cov) <= 3 * mc.se_cov);
  CHECK(std::abs(mc.mean_i - marginal.convert_to<double>()) <= 3 * mc.se_mean_i);

  const auto t0 = covariance_estimate(1000, 0, 0, 1, 20000, 4);
  CHECK(std::abs(t0.mean_i - std::exp(-1.0)) <= 3 * t0.se_mean_i);
  CHECK(std::abs(t0.mean_j - std::exp(-1.0)) <= 3 * t0.se_mean_j);

  const auto w1 = covariance_estimate(50, 1, 0, 1, 5000, 8, 1);
  const auto w3 = covariance_estimate(50, 1, 0, 1, 5000, 8, 3);
  CHECK(std::equal(std::begin(w1.cells), std::end(w1.cells), std::begin(w3.cells)));
  CHECK(w1.mean_r == w3.mean_r);
  CHECK_THROWS_AS(covariance_estimate(10, 1, 2, 2, 10, 1), Error);
}
