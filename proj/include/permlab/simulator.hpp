#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "permlab/combinatorics.hpp"
#include "permlab/permutation.hpp"
#include "permlab/strategies.hpp"

namespace permlab {

enum class TargetMode { Uniform, Fixed, Sweep };

struct GameConfig {
  std::size_t n = 0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  TargetMode target_mode = TargetMode::Uniform;
  std::size_t fixed_target = 0;
  std::string strategy = "shift";
  /// Replace sampling with a sweep of all of S_n (n <= enum_guard).
  bool exhaustive = false;
  std::size_t enum_guard = kDefaultStrategyGuard;
  unsigned workers = 1;
  /// Test hook: every trial uses this permutation instead of a sample.
  std::optional<Permutation> fixed_permutation;
};

/// Throws InvalidInput / ParameterOutOfRange on a malformed config.
void validate(const GameConfig& cfg);

struct TargetTally {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
};

struct SimulationReport {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  double std_err = 0.0;
  std::optional<ExactProb> exact;  // exhaustive mode only
  std::vector<TargetTally> per_target;  // empty unless sweeping
  std::map<std::string, double> theory_refs;
};

/// 95% Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

nlohmann::json to_json(const SimulationReport& r);

/// Reference values for a game of order n: 1/n, 2/n, log n/(n log log n).
std::map<std::string, double> theory_refs(std::size_t n);

/// One round of the needle game: Bob probes guess(hint(sigma), target).
SimulationReport simulate_needle(const GameConfig& cfg);
SimulationReport simulate_needle(const GameConfig& cfg, const Strategy& strategy);

/// One locker-room round with the shift adaptation, fully traced.
struct LockerRound {
  std::size_t hint = 0;
  std::size_t swap_a = 0;  // always locker 0
  std::size_t swap_b = 0;  // locker that held card `hint`
  std::size_t first_card = 0;
  std::optional<std::size_t> second_locker;
  bool success = false;
};

/// Alice swaps card `hint` into locker 0; Bob opens locker 0, stops if it
/// holds his target, otherwise opens (target + hint) mod n.
LockerRound play_locker(const Permutation& sigma, std::size_t target);

SimulationReport simulate_locker(const GameConfig& cfg);

struct MaxShiftDistribution {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  bool exact = false;
  std::vector<std::uint64_t> counts;  // counts[v] = draws with max_l S_l == v
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t min = 0;
  std::size_t q25 = 0;
  std::size_t median = 0;
  std::size_t q75 = 0;
  std::size_t max = 0;
  std::optional<std::size_t> k_of_n;
};

MaxShiftDistribution max_shift_distribution(const GameConfig& cfg);

nlohmann::json to_json(const MaxShiftDistribution& d);

struct WorstCaseReport {
  SimulationReport sweep;
  std::size_t worst_target = 0;
  double worst_estimate = 0.0;
  double worst_low = 0.0;
  double worst_high = 0.0;
  std::optional<ExactProb> worst_exact;
};

/// Needle game with a target sweep; reports the target with the lowest rate.
WorstCaseReport worst_case_target(const GameConfig& cfg);

nlohmann::json to_json(const WorstCaseReport& r);

}  // namespace permlab
