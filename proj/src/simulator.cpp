#include "permlab/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "permlab/errors.hpp"
#include "permlab/parallel.hpp"
#include "permlab/rng.hpp"

namespace permlab {

namespace {

struct Tallies {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::vector<TargetTally> per_target;
  Tallies& operator+=(const Tallies& o) {
    trials += o.trials;
    successes += o.successes;
    for (std::size_t s = 0; s < per_target.size(); ++s) {
      per_target[s].trials += o.per_target[s].trials;
      per_target[s].successes += o.per_target[s].successes;
    }
    return *this;
  }
  void record(std::size_t target, bool success) {
    ++trials;
    successes += success;
    if (!per_target.empty()) {
      ++per_target[target].trials;
      per_target[target].successes += success;
    }
  }
};

// Drives `round(sigma, target) -> bool` over the configured permutation source
// and target mode. Each sampled trial t draws sigma, then (in uniform mode)
// the target, from SplitMix64(derive_seed(seed, t)).
template <class Round>
SimulationReport run_game(const GameConfig& cfg, Round round) {
  validate(cfg);
  const std::size_t n = cfg.n;
  Tallies init;
  if (cfg.target_mode == TargetMode::Sweep) init.per_target.assign(n, TargetTally{});

  auto play = [&](Tallies& acc, const Permutation& sigma, SplitMix64* rng) {
    switch (cfg.target_mode) {
      case TargetMode::Fixed:
        acc.record(cfg.fixed_target, round(sigma, cfg.fixed_target));
        break;
      case TargetMode::Sweep:
        for (std::size_t s = 0; s < n; ++s) acc.record(s, round(sigma, s));
        break;
      case TargetMode::Uniform:
        if (rng) {
          const auto s = static_cast<std::size_t>(rng->uniform_below(n));
          acc.record(s, round(sigma, s));
        } else {
          // Exhaustive: every target with equal weight.
          for (std::size_t s = 0; s < n; ++s) acc.record(s, round(sigma, s));
        }
        break;
    }
  };

  Tallies result;
  if (cfg.exhaustive) {
    require(n <= cfg.enum_guard && n <= kMaxRankableOrder, Errc::TooLargeForEnumeration,
            "exhaustive mode needs n <= " + std::to_string(cfg.enum_guard) + " (raise it with --enum-guard)");
    result = reduce_permutations(n, cfg.workers, init, [&](Tallies& acc, std::span<const std::size_t> image, std::uint64_t) {
      play(acc, make_permutation(image), nullptr);
    });
  } else {
    result = parallel_reduce(cfg.trials, cfg.workers, init, [&](Tallies& acc, std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t trial = begin; trial < end; ++trial) {
        SplitMix64 rng(derive_seed(cfg.seed, trial));
        if (cfg.fixed_permutation) {
          play(acc, *cfg.fixed_permutation, &rng);
        } else {
          const Permutation sigma = random_permutation(n, rng);
          play(acc, sigma, &rng);
        }
      }
    });
  }

  SimulationReport report;
  report.trials = result.trials;
  report.successes = result.successes;
  report.estimate = static_cast<double>(result.successes) / static_cast<double>(result.trials);
  std::tie(report.wilson_low, report.wilson_high) = wilson_interval(result.successes, result.trials);
  if (cfg.exhaustive) {
    report.exact = ExactProb(BigCount(result.successes), BigCount(result.trials));
  } else {
    report.std_err = std::sqrt(report.estimate * (1.0 - report.estimate) / static_cast<double>(result.trials));
  }
  report.per_target = std::move(result.per_target);
  report.theory_refs = theory_refs(n);
  return report;
}

}  // namespace

void validate(const GameConfig& cfg) {
  require(cfg.n >= 1, Errc::ParameterOutOfRange, "n must be positive");
  require(cfg.trials >= 1, Errc::ParameterOutOfRange, "trials must be positive");
  if (cfg.target_mode == TargetMode::Fixed)
    require(cfg.fixed_target < cfg.n, Errc::ParameterOutOfRange, "fixed target outside [0, n)");
  if (cfg.fixed_permutation)
    require(cfg.fixed_permutation->size() == cfg.n, Errc::InvalidInput, "fixed permutation has the wrong order");
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double N = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / N;
  const double denom = 1.0 + z * z / N;
  const double centre = (p + z * z / (2 * N)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / N + z * z / (4 * N * N)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::map<std::string, double> theory_refs(std::size_t n) {
  const double dn = static_cast<double>(n);
  std::map<std::string, double> refs{{"one_over_n", 1.0 / dn}, {"two_over_n", 2.0 / dn}};
  if (n >= 3) refs["log_n_over_n_loglog_n"] = std::log(dn) / (dn * std::log(std::log(dn)));
  return refs;
}

nlohmann::json to_json(const SimulationReport& r) {
  nlohmann::json j{{"trials", r.trials},           {"successes", r.successes},     {"estimate", r.estimate},
                   {"std_err", r.std_err},         {"wilson_95_low", r.wilson_low}, {"wilson_95_high", r.wilson_high},
                   {"theory_refs", r.theory_refs}};
  if (r.exact) j["exact"] = r.exact->str();
  if (!r.per_target.empty()) {
    nlohmann::json targets = nlohmann::json::array();
    for (std::size_t s = 0; s < r.per_target.size(); ++s)
      targets.push_back({{"target", s}, {"trials", r.per_target[s].trials}, {"successes", r.per_target[s].successes}});
    j["per_target"] = std::move(targets);
  }
  return j;
}

SimulationReport simulate_needle(const GameConfig& cfg, const Strategy& strategy) {
  require(strategy.n == cfg.n, Errc::InvalidInput, "strategy order does not match n");
  return run_game(cfg, [&](const Permutation& sigma, std::size_t target) { return strategy.succeeds(sigma, target); });
}

SimulationReport simulate_needle(const GameConfig& cfg) {
  validate(cfg);
  return simulate_needle(cfg, strategy_by_name(cfg.strategy, cfg.n));
}

LockerRound play_locker(const Permutation& sigma, std::size_t target) {
  const std::size_t n = sigma.size();
  LockerRound r;
  r.hint = argmax_shift(shift_histogram(sigma));
  r.swap_a = 0;
  r.swap_b = sigma.position_of(r.hint);
  const Permutation after = apply_transposition(sigma, r.swap_a, r.swap_b);
  r.first_card = after[0];
  if (r.first_card == target) {
    r.success = true;
    return r;
  }
  // Locker 0 now holds the hint.
  r.second_locker = (target + r.first_card) % n;
  r.success = after[*r.second_locker] == target;
  return r;
}

SimulationReport simulate_locker(const GameConfig& cfg) {
  require(cfg.n >= 2, Errc::ParameterOutOfRange, "locker game needs n >= 2");
  return run_game(cfg, [](const Permutation& sigma, std::size_t target) { return play_locker(sigma, target).success; });
}

namespace {

struct MaxCounts {
  std::vector<std::uint64_t> counts;
  MaxCounts& operator+=(const MaxCounts& o) {
    for (std::size_t v = 0; v < counts.size(); ++v) counts[v] += o.counts[v];
    return *this;
  }
};

std::size_t quantile(const std::vector<std::uint64_t>& counts, std::uint64_t total, double q) {
  // Nearest-rank quantile.
  const auto rank = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(total))));
  std::uint64_t cumulative = 0;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    cumulative += counts[v];
    if (cumulative >= rank) return v;
  }
  return counts.size() - 1;
}

std::size_t max_shift(std::span<const std::size_t> image, std::vector<std::size_t>& scratch) {
  const std::size_t n = image.size();
  scratch.assign(n, 0);
  std::size_t best = 0;
  for (std::size_t p = 0; p < n; ++p) best = std::max(best, ++scratch[(p + n - image[p]) % n]);
  return best;
}

}  // namespace

MaxShiftDistribution max_shift_distribution(const GameConfig& cfg) {
  validate(cfg);
  const std::size_t n = cfg.n;
  const MaxCounts init{std::vector<std::uint64_t>(n + 1, 0)};
  MaxCounts result;
  MaxShiftDistribution d;
  d.n = n;
  if (cfg.exhaustive) {
    require(n <= cfg.enum_guard && n <= kMaxRankableOrder, Errc::TooLargeForEnumeration,
            "exhaustive mode needs n <= " + std::to_string(cfg.enum_guard) + " (raise it with --enum-guard)");
    result = reduce_permutations(n, cfg.workers, init, [](MaxCounts& acc, std::span<const std::size_t> image, std::uint64_t) {
      thread_local std::vector<std::size_t> scratch;
      ++acc.counts[max_shift(image, scratch)];
    });
    d.exact = true;
    d.trials = factorial_u64(n);
  } else {
    result = parallel_reduce(cfg.trials, cfg.workers, init, [&](MaxCounts& acc, std::uint64_t begin, std::uint64_t end) {
      std::vector<std::size_t> image, scratch;
      for (std::uint64_t trial = begin; trial < end; ++trial) {
        if (cfg.fixed_permutation) {
          ++acc.counts[max_shift(cfg.fixed_permutation->image(), scratch)];
          continue;
        }
        SplitMix64 rng(derive_seed(cfg.seed, trial));
        random_permutation_into(n, rng, image);
        ++acc.counts[max_shift(image, scratch)];
      }
    });
    d.trials = cfg.trials;
  }
  d.counts = std::move(result.counts);
  const double N = static_cast<double>(d.trials);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t v = 0; v <= n; ++v) {
    sum += static_cast<double>(v) * static_cast<double>(d.counts[v]);
    sum_sq += static_cast<double>(v) * static_cast<double>(v) * static_cast<double>(d.counts[v]);
  }
  d.mean = sum / N;
  const double var = std::max(0.0, sum_sq / N - d.mean * d.mean);
  d.std_err = d.exact ? 0.0 : std::sqrt(var / N);
  d.min = quantile(d.counts, d.trials, 0.0);
  d.q25 = quantile(d.counts, d.trials, 0.25);
  d.median = quantile(d.counts, d.trials, 0.5);
  d.q75 = quantile(d.counts, d.trials, 0.75);
  d.max = quantile(d.counts, d.trials, 1.0);
  if (n >= 6) d.k_of_n = k_of_n(n);
  return d;
}

nlohmann::json to_json(const MaxShiftDistribution& d) {
  // Trailing zero buckets are dropped to keep large-n output short.
  std::size_t last = d.counts.size();
  while (last > 1 && d.counts[last - 1] == 0) --last;
  nlohmann::json j{{"n", d.n},
                   {"trials", d.trials},
                   {"exact", d.exact},
                   {"histogram", std::vector<std::uint64_t>(d.counts.begin(), d.counts.begin() + static_cast<std::ptrdiff_t>(last))},
                   {"mean", d.mean},
                   {"std_err", d.std_err},
                   {"min", d.min},
                   {"q25", d.q25},
                   {"median", d.median},
                   {"q75", d.q75},
                   {"max", d.max}};
  j["k_of_n"] = d.k_of_n ? nlohmann::json(*d.k_of_n) : nlohmann::json(nullptr);
  return j;
}

WorstCaseReport worst_case_target(const GameConfig& cfg) {
  require(cfg.target_mode == TargetMode::Sweep, Errc::InvalidInput, "worst-case search needs target mode 'sweep'");
  WorstCaseReport r;
  r.sweep = simulate_needle(cfg);
  double worst = 2.0;
  for (std::size_t s = 0; s < r.sweep.per_target.size(); ++s) {
    const auto& t = r.sweep.per_target[s];
    const double rate = static_cast<double>(t.successes) / static_cast<double>(t.trials);
    // Exact comparisons in exhaustive mode: every target has the same trial count.
    if (rate < worst) {
      worst = rate;
      r.worst_target = s;
    }
  }
  const auto& w = r.sweep.per_target[r.worst_target];
  r.worst_estimate = worst;
  std::tie(r.worst_low, r.worst_high) = wilson_interval(w.successes, w.trials);
  if (cfg.exhaustive) r.worst_exact = ExactProb(BigCount(w.successes), BigCount(w.trials));
  return r;
}

nlohmann::json to_json(const WorstCaseReport& r) {
  nlohmann::json j{{"sweep", to_json(r.sweep)},
                   {"worst_target", r.worst_target},
                   {"worst_estimate", r.worst_estimate},
                   {"worst_wilson_95_low", r.worst_low},
                   {"worst_wilson_95_high", r.worst_high}};
  if (r.worst_exact) j["worst_exact"] = r.worst_exact->str();
  return j;
}

}  // namespace permlab
