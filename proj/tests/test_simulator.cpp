#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "permlab/errors.hpp"
#include "permlab/simulator.hpp"

using namespace permlab;

namespace {

GameConfig config(std::size_t n, std::uint64_t trials, std::uint64_t seed = 1) {
  GameConfig cfg;
  cfg.n = n;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

bool same_report(const SimulationReport& a, const SimulationReport& b) {
  if (a.trials != b.trials || a.successes != b.successes || a.per_target.size() != b.per_target.size()) return false;
  for (std::size_t s = 0; s < a.per_target.size(); ++s)
    if (a.per_target[s].trials != b.per_target[s].trials || a.per_target[s].successes != b.per_target[s].successes)
      return false;
  return to_json(a) == to_json(b);
}

// Locker play written out from the rules.
bool locker_oracle(const oracle::Image& deck, std::size_t target) {
  const std::size_t n = deck.size();
  const auto counts = oracle::shift_counts(deck);
  std::size_t hint = 0;
  for (std::size_t l = 1; l < n; ++l)
    if (counts[l] > counts[hint]) hint = l;
  auto lockers = deck;
  const std::size_t where = static_cast<std::size_t>(std::find(lockers.begin(), lockers.end(), hint) - lockers.begin());
  std::swap(lockers[0], lockers[where]);
  if (lockers[0] == target) return true;
  return lockers[(target + lockers[0]) % n] == target;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(simulate_needle(config(5, 0)), Error);
  auto cfg = config(5, 10);
  cfg.target_mode = TargetMode::Fixed;
  cfg.fixed_target = 5;
  CHECK_THROWS_AS(simulate_needle(cfg), Error);
  cfg = config(5, 10);
  cfg.strategy = "oracle";
  try {
    simulate_needle(cfg);
    FAIL("expected UnknownStrategy");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownStrategy);
  }
  CHECK_THROWS_AS(simulate_locker(config(1, 10)), Error);
}

TEST_CASE("needle Monte Carlo matches exact values") {
  auto cfg = config(100, 1'000'000, 42);
  cfg.strategy = "baseline";
  const auto base = simulate_needle(cfg);
  CHECK(std::abs(base.estimate - 0.01) <= 4 * std::sqrt(0.01 * 0.99 / 1e6));
  CHECK(base.wilson_low <= base.estimate);
  CHECK(base.estimate <= base.wilson_high);

  auto cfg3 = config(3, 1'000'000, 43);
  const auto shift = simulate_needle(cfg3);
  const double exact = evaluate_success_exact(shift_strategy(3)).overall.to_double();
  CHECK(exact == doctest::Approx(2.0 / 3));
  CHECK(std::abs(shift.estimate - exact) <= 4 * std::sqrt(exact * (1 - exact) / 1e6));
}

TEST_CASE("exhaustive mode reproduces exact evaluation") {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (const std::string name : {"shift", "naive"}) {
      auto cfg = config(n, 1);
      cfg.strategy = name;
      cfg.exhaustive = true;
      cfg.workers = 2;
      const auto report = simulate_needle(cfg);
      REQUIRE(report.exact.has_value());
      CHECK(*report.exact == evaluate_success_exact(strategy_by_name(name, n)).overall);
    }
  }
  auto cfg = config(9, 1);
  cfg.exhaustive = true;
  try {
    simulate_needle(cfg);
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(e.is_refusal());
  }
}

TEST_CASE("results do not depend on the worker count") {
  for (const auto mode : {TargetMode::Uniform, TargetMode::Sweep, TargetMode::Fixed}) {
    auto cfg = config(37, 20'000, 7);
    cfg.target_mode = mode;
    cfg.fixed_target = 5;
    cfg.workers = 1;
    const auto one = simulate_needle(cfg);
    const auto locker_one = simulate_locker(cfg);
    for (unsigned w : {2u, 3u, 8u}) {
      cfg.workers = w;
      CHECK(same_report(one, simulate_needle(cfg)));
      CHECK(same_report(locker_one, simulate_locker(cfg)));
    }
  }
  auto cfg = config(200, 3000, 9);
  const auto d1 = max_shift_distribution(cfg);
  cfg.workers = 8;
  CHECK(to_json(d1) == to_json(max_shift_distribution(cfg)));
}

TEST_CASE("locker game") {
  for (std::size_t n = 2; n <= 9; ++n) {
    const auto id = Permutation::identity(n);
    for (std::size_t s = 1; s < n; ++s) {
      const auto round = play_locker(id, s);
      CHECK(round.hint == 0);
      CHECK(round.swap_b == 0);
      CHECK(round.first_card == 0);
      CHECK(round.second_locker == s);
      CHECK(round.success);
    }
  }

  const auto& deck = example_deck();
  const oracle::Image image(deck.image().begin(), deck.image().end());
  std::size_t hits = 0, oracle_hits = 0;
  for (std::size_t s = 0; s < 52; ++s) {
    hits += play_locker(deck, s).success;
    oracle_hits += locker_oracle(image, s);
  }
  CHECK(hits >= 4);
  CHECK(hits == oracle_hits);

  auto cfg = config(52, 1);
  cfg.fixed_permutation = deck;
  cfg.target_mode = TargetMode::Sweep;
  const auto swept = simulate_locker(cfg);
  CHECK(swept.successes == hits);

  for (std::size_t n = 2; n <= 6; ++n)
    for (const auto& img : oracle::all_permutations(n))
      for (std::size_t s = 0; s < n; ++s) CHECK(play_locker(make_permutation(img), s).success == locker_oracle(img, s));
}

TEST_CASE("needle and locker share their sample stream") {
  // At n = 2 both games always succeed with the shift strategy.
  const auto a = simulate_needle(config(2, 1000, 3));
  const auto b = simulate_locker(config(2, 1000, 3));
  CHECK(a.successes == 1000);
  CHECK(b.successes == 1000);
  auto cfg = config(64, 50'000, 21);
  const auto needle = simulate_needle(cfg);
  const auto locker = simulate_locker(cfg);
  CHECK(locker.estimate >= needle.estimate - 3.0 / 64 - 3 * std::hypot(needle.std_err, locker.std_err));
}

TEST_CASE("max shift distribution") {
  auto cfg = config(4, 1);
  cfg.exhaustive = true;
  const auto d = max_shift_distribution(cfg);
  std::vector<std::uint64_t> expected(5, 0);
  for (const auto& p : oracle::all_permutations(4)) ++expected[oracle::max_shift(p)];
  CHECK(d.counts == expected);
  CHECK(d.trials == 24);
  CHECK(d.exact);

  auto id = config(9, 50);
  id.fixed_permutation = Permutation::identity(9);
  const auto di = max_shift_distribution(id);
  CHECK(di.counts[9] == 50);
  CHECK(di.min == 9);
  CHECK(di.max == 9);
  CHECK(di.k_of_n == std::optional<std::size_t>(1));

  double previous = 0.0, previous_se = 0.0;
  int inversions = 0;
  for (std::size_t n : {64u, 256u, 1024u, 4096u}) {
    const auto dn = max_shift_distribution(config(n, 10'000, 5));
    CHECK(dn.min <= dn.q25);
    CHECK(dn.q25 <= dn.median);
    CHECK(dn.median <= dn.q75);
    CHECK(dn.q75 <= dn.max);
    if (dn.mean < previous - std::hypot(dn.std_err, previous_se)) ++inversions;
    previous = dn.mean;
    previous_se = dn.std_err;
  }
  CHECK(inversions <= 1);
}

TEST_CASE("worst-case target") {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto cfg = config(n, 1);
    cfg.exhaustive = true;
    cfg.target_mode = TargetMode::Sweep;
    const auto shift = worst_case_target(cfg);
    for (const auto& t : shift.sweep.per_target) CHECK(t.successes == shift.sweep.per_target[0].successes);
    CHECK(shift.worst_target == 0);
  }
  auto naive = config(5, 1);
  naive.exhaustive = true;
  naive.target_mode = TargetMode::Sweep;
  naive.strategy = "naive";
  const auto w = worst_case_target(naive);
  for (const auto& t : w.sweep.per_target) CHECK(ExactProb(t.successes, t.trials) == ExactProb(2, 5));
  CHECK(w.worst_exact == ExactProb(2, 5));

  for (std::size_t n : {3u, 5u, 7u}) {
    naive.n = n;
    naive.strategy = "baseline";
    CHECK(worst_case_target(naive).worst_exact == ExactProb(1, n));
  }
  CHECK_THROWS_AS(worst_case_target(config(5, 10)), Error);
}

TEST_CASE("Wilson interval") {
  const auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
  const auto [zlo, zhi] = wilson_interval(0, 10);
  CHECK(zlo == 0.0);
  CHECK(zhi > 0.0);
}
