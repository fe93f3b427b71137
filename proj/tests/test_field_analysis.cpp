#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "permlab/combinatorics.hpp"
#include "permlab/errors.hpp"
#include "permlab/field_analysis.hpp"
#include "permlab/rng.hpp"
#include "permlab/strategies.hpp"

using namespace permlab;

namespace {

// Best field over every assignment of S_n into m classes, by plain counting.
struct OracleBest {
  std::uint64_t field = 0;
  std::uint64_t aic_field = 0;
};

OracleBest brute_oracle(std::size_t n, std::size_t m) {
  const std::size_t N = oracle::factorial(n);
  std::vector<std::size_t> a(N, 0);
  OracleBest best;
  for (;;) {
    const auto f = oracle::field(n, a, m);
    best.field = std::max(best.field, f);
    if (f > best.aic_field && oracle::aic(n, a, m)) best.aic_field = f;
    std::size_t d = 0;
    while (d < N && ++a[d] == m) a[d++] = 0;
    if (d == N) break;
  }
  return best;
}

PartitionStrategy random_partition(std::size_t n, std::size_t m, SplitMix64& rng) {
  std::vector<std::size_t> a(oracle::factorial(n));
  for (auto& c : a) c = static_cast<std::size_t>(rng.uniform_below(m));
  return PartitionStrategy(n, m, std::move(a));
}

}  // namespace

TEST_CASE("magneticity and magnets") {
  const auto whole = single_class_partition(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) CHECK(magneticity(whole, 0, i, k) == 2);
  for (std::size_t k = 0; k < 3; ++k) CHECK(magnet_and_intensity(whole, 0, k) == MagnetIntensity{0, 2});

  const auto singles = singleton_partition(3);
  for (std::uint64_t r = 0; r < 6; ++r) {
    const auto sigma = lex_unrank(3, r);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(magnet_and_intensity(singles, r, k) == MagnetIntensity{sigma.position_of(k), 1});
      for (std::size_t i = 0; i < 3; ++i) CHECK(magneticity(singles, r, i, k) == (sigma[i] == k ? 1u : 0u));
    }
  }

  // Empty classes have zero magneticity everywhere.
  const PartitionStrategy padded(3, 2, std::vector<std::size_t>(6, 0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) CHECK(magneticity(padded, 1, i, k) == 0);

  const auto naive = naive_partition(4);
  const auto sizes = naive.class_sizes();
  for (std::size_t h = 0; h < 4; ++h) CHECK(magnet_and_intensity(naive, h, h) == MagnetIntensity{0, sizes[h]});

  CHECK_THROWS_AS(magneticity(whole, 1, 0, 0), Error);
  CHECK_THROWS_AS(magneticity(whole, 0, 3, 0), Error);
}

TEST_CASE("field of known partitions") {
  CHECK(field_of_partition(naive_partition(3)) == 12);
  CHECK(success_upper_bound(naive_partition(3)) == ExactProb(2, 3));
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(field_of_partition(single_class_partition(n)) == factorial(n));
    CHECK(success_upper_bound(single_class_partition(n)) == ExactProb(1, n));
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    CHECK(field_of_partition(singleton_partition(n)) == factorial(n) * n);
    CHECK(success_upper_bound(singleton_partition(n)) == ExactProb(1, 1));
  }
  for (std::size_t n = 2; n <= 6; ++n)
    CHECK(success_upper_bound(naive_partition(n)) == evaluate_success_exact(naive_strategy(n)).overall);
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_partition(4, 3, rng);
    CHECK(field_of_partition(p) == oracle::field(4, p.assignment(), 3));
  }
}

TEST_CASE("exact success never exceeds the field bound") {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (const auto& name : {"shift", "naive", "baseline"}) {
      const auto st = strategy_by_name(name, n);
      CHECK(evaluate_success_exact(st).overall <= success_upper_bound(partition_of_strategy(st)));
    }
  }
}

TEST_CASE("brute-force field agrees with exhaustive assignment search at n = 3") {
  const std::uint64_t expected_plain[] = {0, 6, 10, 12, 14, 16, 18};
  for (std::size_t m = 1; m <= 4; ++m) {
    const auto oracle_best = brute_oracle(3, m);
    const auto plain = brute_force_field(3, m);
    CHECK(plain.field == oracle_best.field);
    CHECK(field_of_partition(plain.witness) == plain.field);
    if (oracle_best.aic_field == 0) {
      CHECK_THROWS_AS(brute_force_field(3, m, Restriction::AliceInChains), Error);
      continue;
    }
    const auto aic = brute_force_field(3, m, Restriction::AliceInChains);
    CHECK(aic.field == oracle_best.aic_field);
    CHECK(aic_check(aic.witness));
    CHECK(field_of_partition(aic.witness) == aic.field);
  }
  for (std::size_t m = 1; m <= 6; ++m) CHECK(brute_force_field(3, m).field == expected_plain[m]);
  CHECK(brute_force_field(3, 1).field == 6);
  CHECK(brute_force_field(3, 3, Restriction::AliceInChains).field == 12);
  CHECK(brute_force_field(3, 3).field == field_of_partition(naive_partition(3)));
  CHECK(brute_force_field(2, 2).field == 4);
}

TEST_CASE("brute force dominates sampled partitions at n = 4, m = 2") {
  const auto best = brute_force_field(4, 2);
  CHECK(field_of_partition(best.witness) == best.field);
  SplitMix64 rng(3);
  for (int trial = 0; trial < 200; ++trial) CHECK(field_of_partition(random_partition(4, 2, rng)) <= best.field);
}

TEST_CASE("brute force respects its node budget") {
  try {
    brute_force_field(3, 3, Restriction::None, 5);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
    CHECK(e.is_refusal());
  }
}

TEST_CASE("derangement bound on the field") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const Rational best(brute_force_field(n, n).field);
    for (std::size_t ell = 1; ell <= n; ++ell) CHECK(best <= field_derangement_bound(n, ell));
  }
}

TEST_CASE("magnet dedup: hand-worked and trivial cases") {
  const std::vector<PermutationClass> already{{make_permutation({0, 1, 2})}};
  const auto same = magnet_dedup(already);
  CHECK(same.log.empty());
  CHECK(same.classes == already);
  CHECK(same.magnets[0] == std::vector<std::size_t>{0, 1, 2});

  const auto r = magnet_dedup({{make_permutation({0, 1, 2}), make_permutation({0, 2, 1})}});
  REQUIRE(r.log.size() == 1);
  const auto& step = r.log[0];
  CHECK(step.k1 == 1);
  CHECK(step.k2 == 2);
  CHECK(step.i1 == 1);
  CHECK(step.i2 == 2);
  CHECK(step.replaced == 0);
  CHECK(r.classes[0].size() == 2);
  CHECK(std::set<std::size_t>(r.magnets[0].begin(), r.magnets[0].end()).size() == 3);

  CHECK_THROWS_AS(magnet_dedup({{make_permutation({0, 1}), make_permutation({0, 1})}}), Error);
}

TEST_CASE("magnet dedup properties on random class covers of S_4") {
  constexpr std::size_t n = 4;
  const std::size_t N = oracle::factorial(n);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SplitMix64 rng(derive_seed(0xdedc0de, seed));
    const auto classes = classes_of_partition(random_partition(n, 4, rng));
    const auto r = magnet_dedup(classes);
    REQUIRE(r.classes.size() == classes.size());
    CHECK(r.log.size() <= n * N);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      CHECK(r.classes[c].size() == classes[c].size());
      CHECK(std::set<Permutation>(r.classes[c].begin(), r.classes[c].end()).size() == r.classes[c].size());
      const auto& mags = r.magnets[c];
      CHECK(std::set<std::size_t>(mags.begin(), mags.end()).size() == n);
      // Each reported magnet attains its element's intensity in the final class.
      const auto final_mi = class_magnets(r.classes[c], n);
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t at_magnet = 0;
        for (const auto& p : r.classes[c]) at_magnet += p[mags[k]] == k;
        CHECK(at_magnet == final_mi[k].intensity);
      }
    }
    for (const auto& step : r.log)
      for (std::size_t k = 0; k < n; ++k) CHECK(step.intensities_after[k] >= step.intensities_before[k]);
  }
}
