#include "permlab/structure_stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "permlab/errors.hpp"
#include "permlab/parallel.hpp"
#include "permlab/permutation.hpp"
#include "permlab/rng.hpp"

namespace permlab {

namespace {

void check_guard(std::size_t n, std::size_t guard) {
  require(n <= guard && n <= kMaxRankableOrder, Errc::TooLargeForEnumeration,
          "order " + std::to_string(n) + " exceeds enumeration guard " + std::to_string(guard) +
              " (raise it with --enum-guard)");
}

void check_shift(std::size_t n, std::size_t s) {
  require(n >= 1 && s % n != 0, Errc::ShiftZero, "shift must be non-zero modulo n");
}

void check_same_ambient(const IndexSet& a, const IndexSet& b) {
  require(a.ambient() == b.ambient(), Errc::InvalidInput, "index sets live in different orders");
}

// Allowed image values per position as a bitmask; n <= 64.
using ValueMask = std::uint64_t;

std::uint64_t count_injective(const std::vector<ValueMask>& allowed, std::size_t pos, ValueMask used) {
  if (pos == allowed.size()) return 1;
  std::uint64_t total = 0;
  for (ValueMask options = allowed[pos] & ~used; options != 0; options &= options - 1) {
    const ValueMask bit = options & (~options + 1);
    total += count_injective(allowed, pos + 1, used | bit);
  }
  return total;
}

ValueMask bit(std::size_t v) { return ValueMask{1} << v; }

double clamp_power(double base, std::size_t exponent) {
  return base <= 0.0 ? 0.0 : std::pow(base, static_cast<double>(exponent));
}

struct HitCounter {
  std::uint64_t hits = 0;
  HitCounter& operator+=(const HitCounter& o) {
    hits += o.hits;
    return *this;
  }
};

// k distinct values drawn uniformly from pool, in draw order.
std::vector<std::size_t> sample_distinct(const std::vector<std::size_t>& pool, std::size_t k, SplitMix64& rng) {
  std::vector<std::size_t> picked;
  picked.reserve(k);
  while (picked.size() < k) {
    const std::size_t v = pool[rng.uniform_below(pool.size())];
    if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
  }
  return picked;
}

// Calls visit(combination) for every k-subset of pool in lexicographic order.
template <class Visit>
void for_each_combination(const std::vector<std::size_t>& pool, std::size_t k, Visit visit) {
  if (k > pool.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t a = 0; a < k; ++a) idx[a] = a;
  std::vector<std::size_t> combo(k);
  for (;;) {
    for (std::size_t a = 0; a < k; ++a) combo[a] = pool[idx[a]];
    if (!visit(combo)) return;
    std::size_t a = k;
    while (a > 0 && idx[a - 1] == pool.size() - k + (a - 1)) --a;
    if (a == 0) return;
    ++idx[a - 1];
    for (std::size_t b = a; b < k; ++b) idx[b] = idx[b - 1] + 1;
  }
}

std::vector<std::size_t> range_pool(std::size_t n) {
  std::vector<std::size_t> pool(n);
  for (std::size_t v = 0; v < n; ++v) pool[v] = v;
  return pool;
}

void fill_estimate(ProbabilityEstimate& e) {
  e.estimate = e.trials == 0 ? 0.0 : static_cast<double>(e.hits) / static_cast<double>(e.trials);
  e.std_err = e.exact ? 0.0 : std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(e.trials));
}

}  // namespace

IndexSet::IndexSet(std::size_t n, std::vector<std::size_t> elements) : n_(n), elements_(std::move(elements)) {
  require(n >= 1, Errc::InvalidInput, "index set order must be positive");
  std::sort(elements_.begin(), elements_.end());
  require(std::adjacent_find(elements_.begin(), elements_.end()) == elements_.end(), Errc::InvalidInput,
          "index set has duplicate elements");
  require(elements_.empty() || elements_.back() < n, Errc::IndexOutOfRange,
          "index set element outside [0, " + std::to_string(n) + ")");
}

bool IndexSet::contains(std::size_t x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

std::uint64_t IndexSet::mask() const noexcept {
  std::uint64_t m = 0;
  for (std::size_t x : elements_) m |= std::uint64_t{1} << x;
  return m;
}

IndexSet shift_set(const IndexSet& set, long long shift) {
  const auto n = static_cast<long long>(set.ambient());
  const long long offset = ((shift % n) + n) % n;
  std::vector<std::size_t> out;
  out.reserve(set.size());
  for (std::size_t x : set.elements()) out.push_back(static_cast<std::size_t>((static_cast<long long>(x) + offset) % n));
  return IndexSet(set.ambient(), std::move(out));
}

bool disjoint(const IndexSet& a, const IndexSet& b) {
  auto ia = a.elements().begin();
  auto ib = b.elements().begin();
  while (ia != a.elements().end() && ib != b.elements().end()) {
    if (*ia == *ib) return false;
    if (*ia < *ib)
      ++ia;
    else
      ++ib;
  }
  return true;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  check_same_ambient(a, b);
  std::vector<std::size_t> out;
  std::set_union(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                 std::back_inserter(out));
  return IndexSet(a.ambient(), std::move(out));
}

bool is_compatible(const IndexSet& I, const IndexSet& J, std::size_t s) {
  check_same_ambient(I, J);
  check_shift(I.ambient(), s);
  const auto ss = static_cast<long long>(s % I.ambient());
  const IndexSet sets[4] = {I, J, shift_set(I, -ss), shift_set(J, ss)};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (!disjoint(sets[a], sets[b])) return false;
  return true;
}

bool is_feasible(const IndexSet& K, const IndexSet& I, const IndexSet& J, std::size_t s) {
  check_same_ambient(K, I);
  if (!is_compatible(I, J, s)) return false;
  const auto ss = static_cast<long long>(s % I.ambient());
  if (!disjoint(K, shift_set(K, ss))) return false;
  return disjoint(K, I) && disjoint(K, J) && disjoint(K, shift_set(I, -ss)) && disjoint(K, shift_set(J, ss));
}

BigCount count_phi_star(const IndexSet& I, const IndexSet& J, std::size_t s) {
  check_same_ambient(I, J);
  check_shift(I.ambient(), s);
  if (!disjoint(I, J) || !disjoint(I, shift_set(J, static_cast<long long>(s % I.ambient())))) return 0;
  return factorial(I.ambient() - I.size() - J.size());
}

BigCount enumerate_phi(const IndexSet& I, const IndexSet& J, std::size_t s, std::size_t guard) {
  check_same_ambient(I, J);
  const std::size_t n = I.ambient();
  check_shift(n, s);
  check_guard(n, guard);
  require(n <= 64, Errc::TooLargeForEnumeration, "constrained enumeration needs n <= 64");
  std::vector<ValueMask> allowed(n);
  const ValueMask all = n == 64 ? ~ValueMask{0} : bit(n) - 1;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t shifted = (p + s) % n;
    const bool in_i = I.contains(p);
    const bool in_j = J.contains(p);
    if (in_i && in_j)
      allowed[p] = 0;
    else if (in_i)
      allowed[p] = bit(p);
    else if (in_j)
      allowed[p] = bit(shifted);
    else
      allowed[p] = all & ~bit(p) & ~bit(shifted);
  }
  return BigCount(count_injective(allowed, 0, 0));
}

BigCount p_set_closed_form(const IndexSet& K, const IndexSet& I, const IndexSet& J) {
  const std::size_t covered = set_union(set_union(I, J), K).size();
  return (BigCount(1) << K.size()) * factorial(I.ambient() - covered);
}

BigCount count_P_set(const IndexSet& K, const IndexSet& I, const IndexSet& J, std::size_t s, std::size_t guard) {
  check_same_ambient(K, I);
  check_same_ambient(I, J);
  const std::size_t n = I.ambient();
  check_shift(n, s);
  if (is_feasible(K, I, J, s)) return p_set_closed_form(K, I, J);
  check_guard(n, guard);
  // Constrained positions are searched exhaustively; the rest permute freely.
  std::vector<ValueMask> allowed;
  for (std::size_t p = 0; p < n; ++p) {
    const bool in_i = I.contains(p), in_j = J.contains(p), in_k = K.contains(p);
    if (!in_i && !in_j && !in_k) continue;
    ValueMask mask = ~ValueMask{0};
    if (in_i) mask &= bit(p);
    if (in_j) mask &= bit((p + s) % n);
    if (in_k) mask &= bit(p) | bit((p + s) % n);
    allowed.push_back(mask);
  }
  return BigCount(count_injective(allowed, 0, 0)) * factorial(n - allowed.size());
}

nlohmann::json to_json(const ProbabilityEstimate& e) {
  nlohmann::json j{{"params", e.params},
                   {"estimate", e.estimate},
                   {"std_err", e.std_err},
                   {"theory_bound", e.theory_bound},
                   {"trials", e.trials},
                   {"hits", e.hits}};
  if (e.exact) j["exact"] = e.exact->str();
  return j;
}

ProbabilityEstimate compatible_pair_stats(std::size_t n, std::size_t t, std::size_t s, EstimateMode mode,
                                          std::uint64_t trials, std::uint64_t seed, unsigned workers,
                                          std::uint64_t exact_budget) {
  require(2 * t < n, Errc::ParameterOutOfRange, "need 2t < n");
  check_shift(n, s);
  ProbabilityEstimate e;
  e.params = {{"n", n}, {"t", t}, {"s", s}, {"mode", mode == EstimateMode::Exact ? "exact" : "sampled"}};
  e.theory_bound = clamp_power(1.0 - 4.0 * static_cast<double>(t) / static_cast<double>(n - 2 * t), 2 * t);

  if (mode == EstimateMode::Exact) {
    const BigCount pairs = binomial(n, t) * binomial(n - t, t);
    require(pairs <= exact_budget, Errc::BudgetExceeded,
            pairs.str() + " ordered pairs exceed the exact budget " + std::to_string(exact_budget));
    const auto pool = range_pool(n);
    for_each_combination(pool, t, [&](const std::vector<std::size_t>& i_elems) {
      const IndexSet I(n, i_elems);
      std::vector<std::size_t> rest;
      for (std::size_t v = 0; v < n; ++v)
        if (!I.contains(v)) rest.push_back(v);
      for_each_combination(rest, t, [&](const std::vector<std::size_t>& j_elems) {
        ++e.trials;
        e.hits += is_compatible(I, IndexSet(n, j_elems), s);
        return true;
      });
      return true;
    });
    e.exact = ExactProb(BigCount(e.hits), BigCount(e.trials));
  } else {
    require(trials >= 1, Errc::ParameterOutOfRange, "trials must be positive");
    const auto pool = range_pool(n);
    const HitCounter c = parallel_reduce(trials, workers, HitCounter{},
                                         [&](HitCounter& acc, std::uint64_t begin, std::uint64_t end) {
                                           for (std::uint64_t trial = begin; trial < end; ++trial) {
                                             SplitMix64 rng(derive_seed(seed, trial));
                                             auto drawn = sample_distinct(pool, 2 * t, rng);
                                             const IndexSet I(n, {drawn.begin(), drawn.begin() + t});
                                             const IndexSet J(n, {drawn.begin() + t, drawn.end()});
                                             acc.hits += is_compatible(I, J, s);
                                           }
                                         });
    e.trials = trials;
    e.hits = c.hits;
  }
  fill_estimate(e);
  return e;
}

std::pair<IndexSet, IndexSet> canonical_compatible_pair(std::size_t n, std::size_t t, std::size_t s) {
  check_shift(n, s);
  require(2 * t <= n, Errc::ParameterOutOfRange, "need 2t <= n");
  // Greedy ascending scans give the lexicographically smallest sets: I avoids
  // I - s, and J avoids I, I - s, I - 2s and J + s. For most shifts I = {0..t-1};
  // small s forces gaps.
  const std::size_t shift = s % n;
  auto plus = [&](std::size_t v, std::size_t times) { return (v + times * shift) % n; };
  auto minus = [&](std::size_t v) { return (v + n - shift) % n; };
  std::vector<bool> in_i(n, false), in_j(n, false);
  std::vector<std::size_t> first, second;
  for (std::size_t v = 0; v < n && first.size() < t; ++v) {
    if (in_i[plus(v, 1)] || in_i[minus(v)]) continue;
    in_i[v] = true;
    first.push_back(v);
  }
  for (std::size_t v = 0; v < n && second.size() < t; ++v) {
    if (in_i[v] || in_i[plus(v, 1)] || in_i[plus(v, 2)]) continue;
    if (in_j[plus(v, 1)] || in_j[minus(v)]) continue;
    in_j[v] = true;
    second.push_back(v);
  }
  require(first.size() == t && second.size() == t, Errc::ParameterOutOfRange,
          "no compatible pair of " + std::to_string(t) + "-sets for n = " + std::to_string(n) +
              ", s = " + std::to_string(s));
  IndexSet I(n, first), J(n, second);
  require(is_compatible(I, J, s), Errc::ParameterOutOfRange, "greedy construction did not yield a compatible pair");
  return {std::move(I), std::move(J)};
}

ProbabilityEstimate feasible_set_stats(std::size_t n, std::size_t t, std::size_t k, std::size_t s,
                                       EstimateMode mode, std::uint64_t trials, std::uint64_t seed,
                                       unsigned workers, std::uint64_t exact_budget) {
  require(4 * t <= n && 2 * k <= n - 4 * t, Errc::HypothesisViolated,
          "need 2k <= n - 4t (n = " + std::to_string(n) + ", t = " + std::to_string(t) + ", k = " +
              std::to_string(k) + ")");
  const auto [I, J] = canonical_compatible_pair(n, t, s);
  ProbabilityEstimate e;
  e.params = {{"n", n},           {"t", t},          {"k", k}, {"s", s}, {"mode", mode == EstimateMode::Exact ? "exact" : "sampled"},
              {"I", I.elements()}, {"J", J.elements()}};
  e.theory_bound = k == 0 ? 1.0
                          : clamp_power(1.0 - static_cast<double>(2 * t + k) / static_cast<double>(n - 2 * t - k), k);
  std::vector<std::size_t> complement;
  for (std::size_t v = 0; v < n; ++v)
    if (!I.contains(v) && !J.contains(v)) complement.push_back(v);

  if (mode == EstimateMode::Exact) {
    const BigCount subsets = binomial(complement.size(), k);
    require(subsets <= exact_budget, Errc::BudgetExceeded,
            subsets.str() + " subsets exceed the exact budget " + std::to_string(exact_budget));
    for_each_combination(complement, k, [&](const std::vector<std::size_t>& combo) {
      ++e.trials;
      e.hits += is_feasible(IndexSet(n, combo), I, J, s);
      return true;
    });
    e.exact = ExactProb(BigCount(e.hits), BigCount(e.trials));
  } else {
    require(trials >= 1, Errc::ParameterOutOfRange, "trials must be positive");
    const HitCounter c = parallel_reduce(trials, workers, HitCounter{},
                                         [&, &I = I, &J = J](HitCounter& acc, std::uint64_t begin, std::uint64_t end) {
                                           for (std::uint64_t trial = begin; trial < end; ++trial) {
                                             SplitMix64 rng(derive_seed(seed, trial));
                                             const IndexSet K(n, sample_distinct(complement, k, rng));
                                             acc.hits += is_feasible(K, I, J, s);
                                           }
                                         });
    e.trials = trials;
    e.hits = c.hits;
  }
  fill_estimate(e);
  return e;
}

namespace {

struct PairTable {
  std::size_t width = 0;
  std::vector<std::uint64_t> counts;
  PairTable& operator+=(const PairTable& o) {
    for (std::size_t a = 0; a < counts.size(); ++a) counts[a] += o.counts[a];
    return *this;
  }
};

PairTable sweep_pair_counts(std::size_t n, std::size_t i, std::size_t j, std::size_t guard, unsigned workers) {
  require(i < n && j < n, Errc::IndexOutOfRange, "shift classes must lie in [0, n)");
  require(i != j, Errc::EqualIndices, "shift classes i and j must differ");
  check_guard(n, guard);
  const PairTable init{n + 1, std::vector<std::uint64_t>((n + 1) * (n + 1), 0)};
  return reduce_permutations(n, workers, init, [&](PairTable& acc, std::span<const std::size_t> image, std::uint64_t) {
    std::size_t si = 0, sj = 0;
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t v = (p + n - image[p]) % n;
      si += (v == i);
      sj += (v == j);
    }
    ++acc.counts[si * acc.width + sj];
  });
}

}  // namespace

std::vector<std::vector<ExactProb>> joint_shift_table(std::size_t n, std::size_t i, std::size_t j, std::size_t guard,
                                                      unsigned workers) {
  const PairTable table = sweep_pair_counts(n, i, j, guard, workers);
  const BigCount total = factorial(n);
  std::vector<std::vector<ExactProb>> out(n + 1, std::vector<ExactProb>(n + 1));
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b) out[a][b] = ExactProb(BigCount(table.counts[a * (n + 1) + b]), total);
  return out;
}

ExactProb joint_shift_pmf(std::size_t n, std::size_t i, std::size_t j, std::size_t t, std::size_t guard,
                          unsigned workers) {
  require(t <= n, Errc::KOutOfRange, "t exceeds n");
  const PairTable table = sweep_pair_counts(n, i, j, guard, workers);
  return ExactProb(BigCount(table.counts[t * (n + 1) + t]), factorial(n));
}

namespace {

struct CellCounts {
  std::uint64_t cells[4] = {0, 0, 0, 0};
  std::uint64_t r_total = 0;
  CellCounts& operator+=(const CellCounts& o) {
    for (int c = 0; c < 4; ++c) cells[c] += o.cells[c];
    r_total += o.r_total;
    return *this;
  }
};

void tally(CellCounts& acc, std::span<const std::size_t> image, std::size_t t, std::size_t i, std::size_t j,
           std::vector<std::size_t>& scratch) {
  const std::size_t n = image.size();
  scratch.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p) ++scratch[(p + n - image[p]) % n];
  const bool zi = scratch[i] == t;
  const bool zj = scratch[j] == t;
  ++acc.cells[(zi ? 2 : 0) + (zj ? 1 : 0)];
  acc.r_total += static_cast<std::uint64_t>(std::count(scratch.begin(), scratch.end(), t));
}

IndicatorStat summarise(std::size_t n, std::size_t t, std::size_t i, std::size_t j, const CellCounts& c,
                        std::uint64_t total) {
  IndicatorStat st;
  st.n = n;
  st.t = t;
  st.i = i;
  st.j = j;
  st.trials = total;
  std::copy(std::begin(c.cells), std::end(c.cells), st.cells);
  const double N = static_cast<double>(total);
  const double p[4] = {c.cells[0] / N, c.cells[1] / N, c.cells[2] / N, c.cells[3] / N};
  st.mean_i = p[2] + p[3];
  st.mean_j = p[1] + p[3];
  st.mean_ij = p[3];
  st.cov = st.mean_ij - st.mean_i * st.mean_j;
  st.mean_r = static_cast<double>(c.r_total) / N;
  st.se_mean_i = std::sqrt(st.mean_i * (1 - st.mean_i) / N);
  st.se_mean_j = std::sqrt(st.mean_j * (1 - st.mean_j) / N);
  st.se_mean_ij = std::sqrt(st.mean_ij * (1 - st.mean_ij) / N);
  // Delta method: the plug-in covariance has influence (Z_i - mu_i)(Z_j - mu_j) - cov.
  double second = 0.0;
  for (int cell = 0; cell < 4; ++cell) {
    const double di = ((cell & 2) ? 1.0 : 0.0) - st.mean_i;
    const double dj = ((cell & 1) ? 1.0 : 0.0) - st.mean_j;
    second += p[cell] * di * di * dj * dj;
  }
  st.se_cov = std::sqrt(std::max(0.0, second - st.cov * st.cov) / N);
  st.marginal_exact = shift_count_pmf(n, t);
  return st;
}

void check_indicator_args(std::size_t n, std::size_t t, std::size_t i, std::size_t j) {
  require(n >= 2, Errc::ParameterOutOfRange, "need n >= 2");
  require(i < n && j < n, Errc::IndexOutOfRange, "shift classes must lie in [0, n)");
  require(i != j, Errc::EqualIndices, "shift classes i and j must differ");
  require(t <= n, Errc::KOutOfRange, "t exceeds n");
}

}  // namespace

IndicatorStat covariance_estimate(std::size_t n, std::size_t t, std::size_t i, std::size_t j, std::uint64_t trials,
                                  std::uint64_t seed, unsigned workers) {
  check_indicator_args(n, t, i, j);
  require(trials >= 1, Errc::ParameterOutOfRange, "trials must be positive");
  const CellCounts c =
      parallel_reduce(trials, workers, CellCounts{}, [&](CellCounts& acc, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::size_t> image, scratch;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          SplitMix64 rng(derive_seed(seed, trial));
          random_permutation_into(n, rng, image);
          tally(acc, image, t, i, j, scratch);
        }
      });
  return summarise(n, t, i, j, c, trials);
}

IndicatorStat covariance_exact(std::size_t n, std::size_t t, std::size_t i, std::size_t j, std::size_t guard,
                               unsigned workers) {
  check_indicator_args(n, t, i, j);
  check_guard(n, guard);
  const CellCounts c = reduce_permutations(n, workers, CellCounts{},
                                           [&](CellCounts& acc, std::span<const std::size_t> image, std::uint64_t) {
                                             thread_local std::vector<std::size_t> scratch;
                                             tally(acc, image, t, i, j, scratch);
                                           });
  const std::uint64_t total = factorial_u64(n);
  IndicatorStat st = summarise(n, t, i, j, c, total);
  st.exact = true;
  const BigCount N(total);
  const Rational mi(BigCount(c.cells[2] + c.cells[3]), N);
  const Rational mj(BigCount(c.cells[1] + c.cells[3]), N);
  const Rational mij(BigCount(c.cells[3]), N);
  st.cov_exact = mij - mi * mj;
  st.se_mean_i = st.se_mean_j = st.se_mean_ij = st.se_cov = 0.0;
  return st;
}

nlohmann::json to_json(const IndicatorStat& s) {
  nlohmann::json j{{"n", s.n},
                   {"t", s.t},
                   {"i", s.i},
                   {"j", s.j},
                   {"trials", s.trials},
                   {"exact", s.exact},
                   {"mean_i", s.mean_i},
                   {"mean_j", s.mean_j},
                   {"mean_ij", s.mean_ij},
                   {"cov", s.cov},
                   {"se_mean_i", s.se_mean_i},
                   {"se_mean_j", s.se_mean_j},
                   {"se_mean_ij", s.se_mean_ij},
                   {"se_cov", s.se_cov},
                   {"mean_r", s.mean_r},
                   {"cells", {s.cells[0], s.cells[1], s.cells[2], s.cells[3]}},
                   {"marginal_exact", s.marginal_exact.str()},
                   {"marginal_exact_decimal", s.marginal_exact.to_double()}};
  if (s.cov_exact) {
    j["cov_exact"] = s.cov_exact->str();
  }
  return j;
}

IndexSet parse_index_set(std::size_t n, const std::string& text) {
  std::string cleaned = text;
  for (char& ch : cleaned)
    if (ch == ',' || ch == '{' || ch == '}' || ch == '[' || ch == ']') ch = ' ';
  std::istringstream in(cleaned);
  std::vector<std::size_t> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(token, &used);
      if (used != token.size() || token.front() == '-') fail(Errc::InvalidInput, "bad index '" + token + "'");
      values.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      fail(Errc::InvalidInput, "bad index '" + token + "'");
    }
  }
  return IndexSet(n, std::move(values));
}

}  // namespace permlab
