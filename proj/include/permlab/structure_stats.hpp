#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "permlab/combinatorics.hpp"

namespace permlab {

/// Full S_n sweeps in this module are allowed up to this order by default.
inline constexpr std::size_t kDefaultStructureGuard = 10;

/// Sorted, duplicate-free subset of {0, ..., n-1}.
class IndexSet {
 public:
  IndexSet(std::size_t n, std::vector<std::size_t> elements);
  static IndexSet empty(std::size_t n) { return IndexSet(n, {}); }

  std::size_t ambient() const noexcept { return n_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(std::size_t x) const;
  const std::vector<std::size_t>& elements() const noexcept { return elements_; }
  std::uint64_t mask() const noexcept;  // n <= 64

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> elements_;
};

/// L + shift = {(x + shift) mod n : x in L}; negative shifts allowed.
IndexSet shift_set(const IndexSet& set, long long shift);
bool disjoint(const IndexSet& a, const IndexSet& b);
IndexSet set_union(const IndexSet& a, const IndexSet& b);

/// I, J, I - s, J + s pairwise disjoint. Throws ShiftZero when s = 0 mod n.
bool is_compatible(const IndexSet& I, const IndexSet& J, std::size_t s);

/// (I, J) compatible for s, K and K + s disjoint, and K avoids I, J, I - s, J + s.
bool is_feasible(const IndexSet& K, const IndexSet& I, const IndexSet& J, std::size_t s);

/// |{sigma : sigma(i) = i for i in I, sigma(j) = j + s for j in J}|, closed form.
BigCount count_phi_star(const IndexSet& I, const IndexSet& J, std::size_t s);

/// |{sigma : sigma(i) = i iff i in I, sigma(j) = j + s iff j in J}| by
/// exhaustive constrained search over S_n (n <= guard).
BigCount enumerate_phi(const IndexSet& I, const IndexSet& J, std::size_t s,
                       std::size_t guard = kDefaultStructureGuard);

/// 2^|K| * (n - |I u J u K|)!, the count of the P-set when K is feasible.
BigCount p_set_closed_form(const IndexSet& K, const IndexSet& I, const IndexSet& J);

/// |{sigma in Phi*(I, J) : sigma(l) in {l, l + s} for l in K}|: closed form
/// when K is feasible, exact enumeration otherwise (n <= guard).
BigCount count_P_set(const IndexSet& K, const IndexSet& I, const IndexSet& J, std::size_t s,
                     std::size_t guard = kDefaultStructureGuard);

enum class EstimateMode { Exact, Sampled };

/// Result of an exact or sampled probability experiment.
struct ProbabilityEstimate {
  nlohmann::json params;
  std::optional<ExactProb> exact;
  double estimate = 0.0;
  double std_err = 0.0;
  double theory_bound = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
};

nlohmann::json to_json(const ProbabilityEstimate& e);

inline constexpr std::uint64_t kDefaultExactBudget = 200'000'000;

/// Probability that uniform ordered disjoint t-sets I, J are compatible for s,
/// with the lower bound (1 - 4t/(n - 2t))^{2t} (clamped at 0) for comparison.
ProbabilityEstimate compatible_pair_stats(std::size_t n, std::size_t t, std::size_t s, EstimateMode mode,
                                          std::uint64_t trials, std::uint64_t seed, unsigned workers = 1,
                                          std::uint64_t exact_budget = kDefaultExactBudget);

/// Greedy lexicographically smallest pair of t-sets (I, J) compatible for s.
std::pair<IndexSet, IndexSet> canonical_compatible_pair(std::size_t n, std::size_t t, std::size_t s);

/// Probability that a uniform k-subset K of [n] \ (I u J) is feasible for the
/// canonical compatible pair, with bound (1 - (2t + k)/(n - 2t - k))^k.
/// Requires 2k <= n - 4t.
ProbabilityEstimate feasible_set_stats(std::size_t n, std::size_t t, std::size_t k, std::size_t s,
                                       EstimateMode mode, std::uint64_t trials, std::uint64_t seed,
                                       unsigned workers = 1, std::uint64_t exact_budget = kDefaultExactBudget);

/// Exact joint distribution of (S_i, S_j): table[a][b] = Pr[S_i = a, S_j = b].
std::vector<std::vector<ExactProb>> joint_shift_table(std::size_t n, std::size_t i, std::size_t j,
                                                      std::size_t guard = kDefaultStructureGuard,
                                                      unsigned workers = 1);

/// Pr[S_i = t, S_j = t], exact.
ExactProb joint_shift_pmf(std::size_t n, std::size_t i, std::size_t j, std::size_t t,
                          std::size_t guard = kDefaultStructureGuard, unsigned workers = 1);

/// Moments of Z_i = [S_i = t] and Z_j = [S_j = t].
struct IndicatorStat {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t trials = 0;  // n! in exact mode
  bool exact = false;
  double mean_i = 0.0;
  double mean_j = 0.0;
  double mean_ij = 0.0;
  double cov = 0.0;
  double se_mean_i = 0.0;
  double se_mean_j = 0.0;
  double se_mean_ij = 0.0;
  double se_cov = 0.0;
  ExactProb marginal_exact;  // D_{n,t} / n!
  std::optional<Rational> cov_exact;
  /// Mean of R_t = |{l : S_l = t}| over the same draws.
  double mean_r = 0.0;
  // Cell counts of (Z_i, Z_j): [00, 01, 10, 11].
  std::uint64_t cells[4] = {0, 0, 0, 0};
};

IndicatorStat covariance_estimate(std::size_t n, std::size_t t, std::size_t i, std::size_t j, std::uint64_t trials,
                                  std::uint64_t seed, unsigned workers = 1);

/// Same statistic computed by a full sweep of S_n (n <= guard).
IndicatorStat covariance_exact(std::size_t n, std::size_t t, std::size_t i, std::size_t j,
                               std::size_t guard = kDefaultStructureGuard, unsigned workers = 1);

nlohmann::json to_json(const IndicatorStat& s);

IndexSet parse_index_set(std::size_t n, const std::string& text);

}  // namespace permlab
