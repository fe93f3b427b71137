#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "permlab/combinatorics.hpp"
#include "permlab/permutation.hpp"

namespace permlab {

/// Default order limit for sweeps over the whole symmetric group in strategy
/// evaluation (8! = 40320).
inline constexpr std::size_t kDefaultStrategyGuard = 8;

/// A deterministic advice strategy: Alice sends hint(sigma) in [0, m), Bob
/// probes position guess(hint, target) in [0, n).
struct Strategy {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  std::function<std::size_t(const Permutation&)> hint;
  std::function<std::size_t(std::size_t hint, std::size_t target)> guess;

  bool succeeds(const Permutation& sigma, std::size_t target) const {
    return sigma[guess(hint(sigma), target)] == target;
  }
};

/// n x n latin square whose rows tau_0..tau_{n-1} are permutations and whose
/// columns are permutations as well.
class LatinSquare {
 public:
  /// Throws NotLatin unless every row and column is a permutation of [0, n).
  explicit LatinSquare(std::vector<std::vector<std::size_t>> rows);

  /// tau_r(i) = (i - r) mod n.
  static LatinSquare cyclic(std::size_t n);

  std::size_t order() const noexcept { return rows_.size(); }
  std::size_t at(std::size_t row, std::size_t column) const { return rows_[row][column]; }
  /// Column c with tau_row(c) == value.
  std::size_t column_of(std::size_t row, std::size_t value) const { return inverse_[row][value]; }
  const std::vector<std::vector<std::size_t>>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::vector<std::size_t>> rows_;
  std::vector<std::vector<std::size_t>> inverse_;
};

LatinSquare load_latin_square(const std::string& path);
LatinSquare parse_latin_square(const nlohmann::json& j);

Strategy shift_strategy(std::size_t n);
Strategy naive_strategy(std::size_t n);
/// No advice: m = 1, Bob probes the target's own position.
Strategy baseline_strategy(std::size_t n);
Strategy latin_strategy(const LatinSquare& square);

/// Resolves "shift", "naive", "baseline", "latin:cyclic" or "latin:<path>".
Strategy strategy_by_name(const std::string& name, std::size_t n);

struct ExactEvaluation {
  std::size_t n = 0;
  std::vector<BigCount> successes_per_target;  // out of n! each
  std::vector<ExactProb> per_target;
  ExactProb overall;  // uniform target
  ExactProb worst;    // min over targets
  std::size_t worst_target = 0;
};

/// Sweeps all of S_n; throws TooLargeForEnumeration when n > guard.
ExactEvaluation evaluate_success_exact(const Strategy& strategy, std::size_t guard = kDefaultStrategyGuard,
                                       unsigned workers = 1);

/// Explicit assignment of each permutation of S_n (by lexicographic rank) to
/// one of m classes. Classes may be empty.
class PartitionStrategy {
 public:
  PartitionStrategy(std::size_t n, std::size_t m, std::vector<std::size_t> assignment);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t class_of(std::uint64_t rank) const { return assignment_[rank]; }
  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
  std::vector<std::size_t> class_sizes() const;

  friend bool operator==(const PartitionStrategy&, const PartitionStrategy&) = default;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<std::size_t> assignment_;
};

/// Classes by hint value: rank r goes to class strategy.hint(unrank(r)).
PartitionStrategy partition_of_strategy(const Strategy& strategy, std::size_t guard = kDefaultStrategyGuard);

nlohmann::json partition_to_json(const PartitionStrategy& p);
PartitionStrategy partition_from_json(const nlohmann::json& j, std::size_t guard = kDefaultStrategyGuard);
PartitionStrategy load_partition_file(const std::string& path, std::size_t guard = kDefaultStrategyGuard);

/// Alice-In-Chains admissibility: exists a target s such that for every
/// position i some non-empty class C_h has sigma(i) != s for all its members.
/// Only classes Alice can actually send count as messages.
bool aic_check(const PartitionStrategy& p, std::size_t guard = kDefaultStrategyGuard);

}  // namespace permlab
