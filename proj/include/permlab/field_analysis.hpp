#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "permlab/combinatorics.hpp"
#include "permlab/permutation.hpp"
#include "permlab/strategies.hpp"

namespace permlab {

// Terminology, for a class C of permutations:
//   magneticity mag(C, i, k)  number of members placing element k at position i
//   magnet of k               position maximising mag(C, ., k), lowest on ties
//   intensity int(C, k)       that maximum
//   field                     sum of intensities over every class and element

/// Magnet and intensity per (class, element), computed from a partition.
class MagnetTable {
 public:
  MagnetTable(std::size_t classes, std::size_t n);

  std::size_t classes() const noexcept { return classes_; }
  std::size_t order() const noexcept { return n_; }
  std::size_t magnet(std::size_t cls, std::size_t element) const { return magnet_[cls * n_ + element]; }
  std::size_t intensity(std::size_t cls, std::size_t element) const { return intensity_[cls * n_ + element]; }

  void set(std::size_t cls, std::size_t element, std::size_t magnet, std::size_t intensity);

 private:
  std::size_t classes_;
  std::size_t n_;
  std::vector<std::size_t> magnet_;
  std::vector<std::size_t> intensity_;
};

/// Full magneticity counts of a partition, indexed [class][position][element].
class MagneticityTable {
 public:
  explicit MagneticityTable(const PartitionStrategy& p, std::size_t guard = kDefaultStrategyGuard);

  std::size_t magneticity(std::size_t cls, std::size_t position, std::size_t element) const;
  MagnetTable magnets() const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<std::uint32_t> counts_;
};

std::size_t magneticity(const PartitionStrategy& p, std::size_t cls, std::size_t position, std::size_t element,
                        std::size_t guard = kDefaultStrategyGuard);

struct MagnetIntensity {
  std::size_t magnet;
  std::size_t intensity;
  friend bool operator==(const MagnetIntensity&, const MagnetIntensity&) = default;
};

MagnetIntensity magnet_and_intensity(const PartitionStrategy& p, std::size_t cls, std::size_t element,
                                     std::size_t guard = kDefaultStrategyGuard);

BigCount field_of_partition(const PartitionStrategy& p, std::size_t guard = kDefaultStrategyGuard);

/// field / (n * n!): the best success rate any guess rule achieves on this partition.
ExactProb success_upper_bound(const PartitionStrategy& p, std::size_t guard = kDefaultStrategyGuard);

PartitionStrategy naive_partition(std::size_t n);
PartitionStrategy single_class_partition(std::size_t n);
/// m = n!, one permutation per class.
PartitionStrategy singleton_partition(std::size_t n);

enum class Restriction { None, AliceInChains };

struct BruteForceResult {
  BigCount field;
  PartitionStrategy witness;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultBruteForceBudget = 200'000'000;

/// Maximum field over every assignment of S_n into m classes (optionally
/// restricted to Alice-In-Chains admissible ones), by depth-first search over
/// ranks with class-relabelling symmetry broken and a field bound. Throws
/// BudgetExceeded once more than `budget` search nodes are visited.
BruteForceResult brute_force_field(std::size_t n, std::size_t m, Restriction restriction = Restriction::None,
                                   std::uint64_t budget = kDefaultBruteForceBudget);

/// l * n! + e * n * n! / l!, evaluated with the upper rational bound on e:
/// the per-class derangement bound on the field summed over n classes.
Rational field_derangement_bound(std::size_t n, std::size_t ell);

// ---------------------------------------------------------------------------
// Magnet deduplication rewrite.

using PermutationClass = std::vector<Permutation>;

struct DedupStep {
  std::size_t cls;
  std::size_t k1;
  std::size_t k2;
  std::size_t i1;  // shared magnet
  std::size_t i2;  // unused position, new magnet of k2
  std::size_t replaced;
  std::vector<std::size_t> intensities_before;
  std::vector<std::size_t> intensities_after;
  std::vector<std::size_t> magnets_after;
};

struct DedupResult {
  std::vector<PermutationClass> classes;
  std::vector<std::vector<std::size_t>> magnets;  // per class, per element
  std::vector<DedupStep> log;
};

/// Repeatedly takes the lexicographically smallest pair k1 < k2 sharing a
/// magnet i1 in a class, picks the smallest position i2 that is nobody's
/// magnet, and replaces each member sigma with sigma(i1) = k2 by sigma
/// composed with (i1 i2) unless that permutation is already present. k2's
/// magnet moves to i2. Stops when every class has n distinct magnets.
DedupResult magnet_dedup(std::vector<PermutationClass> classes, std::size_t guard = kDefaultStrategyGuard);

/// Per-element magnets and intensities of a single class, lowest position on ties.
std::vector<MagnetIntensity> class_magnets(const PermutationClass& cls, std::size_t n);

/// Splits a partition into explicit classes (empty classes kept).
std::vector<PermutationClass> classes_of_partition(const PartitionStrategy& p);

nlohmann::json dedup_to_json(const DedupResult& r);

}  // namespace permlab
