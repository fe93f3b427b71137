#include "permlab/field_analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "permlab/errors.hpp"

namespace permlab {

namespace {

void check_enumerable(std::size_t n, std::size_t guard) {
  require(n <= guard && n <= kMaxRankableOrder, Errc::TooLargeForEnumeration,
          "order " + std::to_string(n) + " exceeds enumeration guard " + std::to_string(guard) +
              " (raise it with --enum-guard)");
}

std::vector<std::vector<std::size_t>> all_images(std::size_t n) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> out;
  out.reserve(factorial_u64(n));
  do {
    out.push_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

}  // namespace

MagnetTable::MagnetTable(std::size_t classes, std::size_t n)
    : classes_(classes), n_(n), magnet_(classes * n, 0), intensity_(classes * n, 0) {}

void MagnetTable::set(std::size_t cls, std::size_t element, std::size_t magnet, std::size_t intensity) {
  magnet_[cls * n_ + element] = magnet;
  intensity_[cls * n_ + element] = intensity;
}

MagneticityTable::MagneticityTable(const PartitionStrategy& p, std::size_t guard)
    : n_(p.n()), m_(p.m()), counts_(p.m() * p.n() * p.n(), 0) {
  check_enumerable(n_, guard);
  std::vector<std::size_t> image(n_);
  std::iota(image.begin(), image.end(), std::size_t{0});
  std::uint64_t rank = 0;
  do {
    const std::size_t cls = p.class_of(rank++);
    for (std::size_t i = 0; i < n_; ++i) ++counts_[(cls * n_ + i) * n_ + image[i]];
  } while (std::next_permutation(image.begin(), image.end()));
}

std::size_t MagneticityTable::magneticity(std::size_t cls, std::size_t position, std::size_t element) const {
  require(cls < m_ && position < n_ && element < n_, Errc::IndexOutOfRange,
          "magneticity index (" + std::to_string(cls) + ", " + std::to_string(position) + ", " +
              std::to_string(element) + ") out of range");
  return counts_[(cls * n_ + position) * n_ + element];
}

MagnetTable MagneticityTable::magnets() const {
  MagnetTable table(m_, n_);
  for (std::size_t c = 0; c < m_; ++c) {
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t best_pos = 0;
      std::size_t best = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t v = counts_[(c * n_ + i) * n_ + k];
        if (v > best) {
          best = v;
          best_pos = i;
        }
      }
      table.set(c, k, best_pos, best);
    }
  }
  return table;
}

std::size_t magneticity(const PartitionStrategy& p, std::size_t cls, std::size_t position, std::size_t element,
                        std::size_t guard) {
  return MagneticityTable(p, guard).magneticity(cls, position, element);
}

MagnetIntensity magnet_and_intensity(const PartitionStrategy& p, std::size_t cls, std::size_t element,
                                     std::size_t guard) {
  require(cls < p.m() && element < p.n(), Errc::IndexOutOfRange, "class or element out of range");
  const MagnetTable t = MagneticityTable(p, guard).magnets();
  return {t.magnet(cls, element), t.intensity(cls, element)};
}

BigCount field_of_partition(const PartitionStrategy& p, std::size_t guard) {
  const MagnetTable t = MagneticityTable(p, guard).magnets();
  BigCount field = 0;
  for (std::size_t c = 0; c < t.classes(); ++c)
    for (std::size_t k = 0; k < t.order(); ++k) field += t.intensity(c, k);
  return field;
}

ExactProb success_upper_bound(const PartitionStrategy& p, std::size_t guard) {
  return ExactProb(field_of_partition(p, guard), factorial(p.n()) * p.n());
}

PartitionStrategy naive_partition(std::size_t n) { return partition_of_strategy(naive_strategy(n), kMaxRankableOrder); }

PartitionStrategy single_class_partition(std::size_t n) {
  return PartitionStrategy(n, 1, std::vector<std::size_t>(factorial_u64(n), 0));
}

PartitionStrategy singleton_partition(std::size_t n) {
  const std::uint64_t total = factorial_u64(n);
  std::vector<std::size_t> assignment(total);
  std::iota(assignment.begin(), assignment.end(), std::size_t{0});
  return PartitionStrategy(n, total, std::move(assignment));
}

// ---------------------------------------------------------------------------
// Brute-force field search.

namespace {

class FieldSearch {
 public:
  FieldSearch(std::size_t n, std::size_t m, Restriction restriction, std::uint64_t budget)
      : n_(n),
        m_(m),
        restriction_(restriction),
        budget_(budget),
        images_(all_images(n)),
        mag_(m * n * n, 0),
        intensity_(m * n, 0),
        assignment_(images_.size(), 0),
        best_assignment_(images_.size(), 0) {}

  void seed(const PartitionStrategy& candidate) {
    if (candidate.m() > m_) return;
    if (restriction_ == Restriction::AliceInChains && !aic_check(candidate, kMaxRankableOrder)) return;
    const BigCount f = field_of_partition(candidate, kMaxRankableOrder);
    const auto value = f.convert_to<long long>();
    if (value > best_) {
      best_ = value;
      best_assignment_ = candidate.assignment();
    }
  }

  BruteForceResult run() {
    search(0, 0);
    require(best_ >= 0, Errc::InvalidInput, "no admissible partition exists");
    return {BigCount(best_), PartitionStrategy(n_, m_, best_assignment_), nodes_};
  }

 private:
  std::uint16_t& mag(std::size_t c, std::size_t i, std::size_t k) { return mag_[(c * n_ + i) * n_ + k]; }

  // Exists s such that every position i is avoided by some non-empty class.
  bool admissible(std::size_t used) const {
    for (std::size_t s = 0; s < n_; ++s) {
      bool ok = true;
      for (std::size_t i = 0; i < n_ && ok; ++i) {
        bool excluded = false;
        for (std::size_t c = 0; c < used && !excluded; ++c) excluded = mag_[(c * n_ + i) * n_ + s] == 0;
        ok = excluded;
      }
      if (ok) return true;
    }
    return false;
  }

  void search(std::size_t rank, std::size_t used) {
    const std::size_t total = images_.size();
    if (rank == total) {
      if (restriction_ == Restriction::AliceInChains && !admissible(used)) return;
      if (field_ > best_) {
        best_ = field_;
        best_assignment_ = assignment_;
      }
      return;
    }
    // Each further permutation raises at most n intensities by one.
    if (field_ + static_cast<long long>(n_ * (total - rank)) <= best_) return;
    // With every class open, admissibility can only be lost.
    if (restriction_ == Restriction::AliceInChains && used == m_ && !admissible(used)) return;

    const auto& image = images_[rank];
    const std::size_t limit = std::min(used + 1, m_);
    std::vector<std::size_t> raised;
    raised.reserve(n_);
    for (std::size_t c = 0; c < limit; ++c) {
      if (++nodes_ > budget_)
        fail(Errc::BudgetExceeded,
             "brute-force field search exceeded " + std::to_string(budget_) + " nodes (raise it with --budget)");
      raised.clear();
      for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t k = image[i];
        if (++mag(c, i, k) > intensity_[c * n_ + k]) {
          ++intensity_[c * n_ + k];
          raised.push_back(k);
        }
      }
      field_ += static_cast<long long>(raised.size());
      assignment_[rank] = c;
      search(rank + 1, std::max(used, c + 1));
      field_ -= static_cast<long long>(raised.size());
      for (std::size_t k : raised) --intensity_[c * n_ + k];
      for (std::size_t i = 0; i < n_; ++i) --mag(c, i, image[i]);
    }
  }

  std::size_t n_;
  std::size_t m_;
  Restriction restriction_;
  std::uint64_t budget_;
  std::vector<std::vector<std::size_t>> images_;
  std::vector<std::uint16_t> mag_;
  std::vector<std::size_t> intensity_;
  std::vector<std::size_t> assignment_;
  long long field_ = 0;
  long long best_ = -1;
  std::vector<std::size_t> best_assignment_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

BruteForceResult brute_force_field(std::size_t n, std::size_t m, Restriction restriction, std::uint64_t budget) {
  require(n >= 1 && n <= 8, Errc::TooLargeForEnumeration, "brute-force field needs 1 <= n <= 8");
  require(m >= 1, Errc::ParameterOutOfRange, "m must be positive");
  FieldSearch search(n, m, restriction, budget);
  search.seed(single_class_partition(n));
  if (n >= 2) {
    // Classes by sigma(0) folded into m classes; this is the naive partition when m >= n.
    const PartitionStrategy naive = naive_partition(n);
    std::vector<std::size_t> folded = naive.assignment();
    for (auto& c : folded) c %= m;
    search.seed(PartitionStrategy(n, m, std::move(folded)));
  }
  return search.run();
}

Rational field_derangement_bound(std::size_t n, std::size_t ell) {
  const Rational nfact(factorial(n));
  return Rational(static_cast<unsigned long long>(ell)) * nfact +
         e_bounds(n + 10).hi * Rational(static_cast<unsigned long long>(n)) * nfact / Rational(factorial(ell));
}

// ---------------------------------------------------------------------------
// Magnet deduplication.

namespace {

struct ClassState {
  std::size_t n;
  std::set<Permutation> members;
  std::vector<std::size_t> mag;  // [position * n + element]
  std::vector<std::size_t> magnet;

  std::size_t intensity(std::size_t k) const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, mag[i * n + k]);
    return best;
  }

  std::vector<std::size_t> intensities() const {
    std::vector<std::size_t> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = intensity(k);
    return out;
  }

  void add(const Permutation& p) {
    for (std::size_t i = 0; i < n; ++i) ++mag[i * n + p[i]];
  }
  void remove(const Permutation& p) {
    for (std::size_t i = 0; i < n; ++i) --mag[i * n + p[i]];
  }
};

}  // namespace

std::vector<MagnetIntensity> class_magnets(const PermutationClass& cls, std::size_t n) {
  std::vector<std::size_t> mag(n * n, 0);
  for (const auto& p : cls)
    for (std::size_t i = 0; i < n; ++i) ++mag[i * n + p[i]];
  std::vector<MagnetIntensity> out(n, MagnetIntensity{0, 0});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (mag[i * n + k] > out[k].intensity) out[k] = {i, mag[i * n + k]};
  return out;
}

std::vector<PermutationClass> classes_of_partition(const PartitionStrategy& p) {
  std::vector<PermutationClass> classes(p.m());
  const std::uint64_t total = factorial_u64(p.n());
  for (std::uint64_t r = 0; r < total; ++r) classes[p.class_of(r)].push_back(lex_unrank(p.n(), r));
  return classes;
}

DedupResult magnet_dedup(std::vector<PermutationClass> classes, std::size_t guard) {
  DedupResult result;
  if (classes.empty()) return result;
  std::size_t n = 0;
  for (const auto& cls : classes)
    if (!cls.empty()) n = cls.front().size();
  check_enumerable(n, guard);
  if (n == 0) {
    result.classes = std::move(classes);
    result.magnets.assign(result.classes.size(), {});
    return result;
  }

  for (std::size_t c = 0; c < classes.size(); ++c) {
    ClassState st{n, {}, std::vector<std::size_t>(n * n, 0), {}};
    for (const auto& p : classes[c]) {
      require(p.size() == n, Errc::InvalidInput, "class members must share one order");
      require(st.members.insert(p).second, Errc::InvalidInput,
              "class " + std::to_string(c) + " lists a permutation twice");
      st.add(p);
    }
    for (const auto& mi : class_magnets(classes[c], n)) st.magnet.push_back(mi.magnet);

    for (;;) {
      // Lexicographically smallest (k1, k2) sharing a magnet.
      std::size_t k1 = n, k2 = n;
      for (std::size_t a = 0; a < n && k1 == n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          if (st.magnet[a] == st.magnet[b]) {
            k1 = a;
            k2 = b;
            break;
          }
      if (k1 == n) break;

      std::vector<bool> is_magnet(n, false);
      for (std::size_t k = 0; k < n; ++k) is_magnet[st.magnet[k]] = true;
      const std::size_t i1 = st.magnet[k1];
      const std::size_t i2 = static_cast<std::size_t>(std::find(is_magnet.begin(), is_magnet.end(), false) - is_magnet.begin());

      DedupStep step{c, k1, k2, i1, i2, 0, st.intensities(), {}, {}};
      std::vector<Permutation> movers;
      for (const auto& p : st.members)
        if (p[i1] == k2) movers.push_back(p);
      for (const auto& p : movers) {
        Permutation swapped = apply_transposition(p, i1, i2);
        if (st.members.contains(swapped)) continue;
        st.members.erase(p);
        st.remove(p);
        st.add(swapped);
        st.members.insert(std::move(swapped));
        ++step.replaced;
      }

      // k2 now has its maximum at i2; every other element keeps its magnet
      // while that magnet still attains the maximum.
      st.magnet[k2] = i2;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t best = st.intensity(k);
        if (st.mag[st.magnet[k] * n + k] == best) continue;
        for (std::size_t i = 0; i < n; ++i)
          if (st.mag[i * n + k] == best) {
            st.magnet[k] = i;
            break;
          }
      }
      step.intensities_after = st.intensities();
      step.magnets_after = st.magnet;
      result.log.push_back(std::move(step));
    }
    result.classes.emplace_back(st.members.begin(), st.members.end());
    result.magnets.push_back(st.magnet);
  }
  return result;
}

nlohmann::json dedup_to_json(const DedupResult& r) {
  nlohmann::json classes = nlohmann::json::array();
  for (std::size_t c = 0; c < r.classes.size(); ++c)
    classes.push_back({{"size", r.classes[c].size()}, {"magnets", r.magnets[c]}, {"members", r.classes[c]}});
  nlohmann::json log = nlohmann::json::array();
  for (const auto& s : r.log)
    log.push_back({{"class", s.cls},
                   {"k1", s.k1},
                   {"k2", s.k2},
                   {"i1", s.i1},
                   {"i2", s.i2},
                   {"replaced", s.replaced},
                   {"intensities_before", s.intensities_before},
                   {"intensities_after", s.intensities_after},
                   {"magnets_after", s.magnets_after}});
  return {{"classes", classes}, {"steps", r.log.size()}, {"log", log}};
}

}  // namespace permlab
