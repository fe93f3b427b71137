#include "permlab/strategies.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <numeric>

#include "permlab/errors.hpp"
#include "permlab/parallel.hpp"

namespace permlab {

namespace {

void check_enumerable(std::size_t n, std::size_t guard) {
  require(n <= guard && n <= kMaxRankableOrder, Errc::TooLargeForEnumeration,
          "order " + std::to_string(n) + " exceeds enumeration guard " + std::to_string(guard) +
              " (raise it with --enum-guard)");
}

}  // namespace

LatinSquare::LatinSquare(std::vector<std::vector<std::size_t>> rows) : rows_(std::move(rows)) {
  const std::size_t n = rows_.size();
  require(n >= 1, Errc::NotLatin, "latin square must be non-empty");
  inverse_.assign(n, std::vector<std::size_t>(n, n));
  for (std::size_t r = 0; r < n; ++r) {
    require(rows_[r].size() == n, Errc::NotLatin, "row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t v = rows_[r][c];
      require(v < n, Errc::NotLatin, "entry out of range in row " + std::to_string(r));
      require(inverse_[r][v] == n, Errc::NotLatin, "row " + std::to_string(r) + " repeats " + std::to_string(v));
      inverse_[r][v] = c;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      require(!seen[rows_[r][c]], Errc::NotLatin, "column " + std::to_string(c) + " repeats a value");
      seen[rows_[r][c]] = true;
    }
  }
}

LatinSquare LatinSquare::cyclic(std::size_t n) {
  std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i) rows[r][i] = (i + n - r) % n;
  return LatinSquare(std::move(rows));
}

LatinSquare parse_latin_square(const nlohmann::json& j) {
  require(j.is_array(), Errc::NotLatin, "latin square must be a JSON array of rows");
  std::vector<std::vector<std::size_t>> rows;
  for (const auto& row : j) {
    require(row.is_array(), Errc::NotLatin, "latin square rows must be arrays");
    std::vector<std::size_t> values;
    for (const auto& v : row) {
      require(v.is_number_unsigned(), Errc::NotLatin, "latin square entries must be non-negative integers");
      values.push_back(v.get<std::size_t>());
    }
    rows.push_back(std::move(values));
  }
  return LatinSquare(std::move(rows));
}

LatinSquare load_latin_square(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::InvalidInput, "cannot open " + path);
  try {
    return parse_latin_square(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::InvalidInput, path + ": " + e.what());
  }
}

Strategy shift_strategy(std::size_t n) {
  require(n >= 1, Errc::ParameterOutOfRange, "order must be positive");
  Strategy st;
  st.name = "shift";
  st.n = n;
  st.m = n;
  st.hint = [](const Permutation& sigma) { return argmax_shift(shift_histogram(sigma)); };
  st.guess = [n](std::size_t h, std::size_t s) { return (s + h) % n; };
  return st;
}

Strategy naive_strategy(std::size_t n) {
  require(n >= 2, Errc::ParameterOutOfRange, "naive strategy needs n >= 2");
  Strategy st;
  st.name = "naive";
  st.n = n;
  st.m = n;
  st.hint = [](const Permutation& sigma) { return sigma[0]; };
  st.guess = [](std::size_t h, std::size_t s) -> std::size_t { return s == h ? 0 : 1; };
  return st;
}

Strategy baseline_strategy(std::size_t n) {
  require(n >= 1, Errc::ParameterOutOfRange, "order must be positive");
  Strategy st;
  st.name = "baseline";
  st.n = n;
  st.m = 1;
  st.hint = [](const Permutation&) -> std::size_t { return 0; };
  st.guess = [](std::size_t, std::size_t s) { return s; };
  return st;
}

Strategy latin_strategy(const LatinSquare& square) {
  const auto shared = std::make_shared<const LatinSquare>(square);
  const std::size_t n = square.order();
  Strategy st;
  st.name = "latin";
  st.n = n;
  st.m = n;
  st.hint = [shared, n](const Permutation& sigma) {
    if (sigma.size() != n) fail(Errc::InvalidInput, "permutation order does not match latin square");
    std::size_t best_row = 0;
    std::size_t best = 0;
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t agree = 0;
      for (std::size_t i = 0; i < n; ++i) agree += (shared->at(r, i) == sigma[i]);
      if (agree > best) {
        best = agree;
        best_row = r;
      }
    }
    return best_row;
  };
  st.guess = [shared](std::size_t h, std::size_t s) { return shared->column_of(h, s); };
  return st;
}

Strategy strategy_by_name(const std::string& name, std::size_t n) {
  if (name == "shift") return shift_strategy(n);
  if (name == "naive") return naive_strategy(n);
  if (name == "baseline") return baseline_strategy(n);
  if (name.starts_with("latin:")) {
    const std::string source = name.substr(6);
    const LatinSquare square = source == "cyclic" ? LatinSquare::cyclic(n) : load_latin_square(source);
    require(square.order() == n, Errc::InvalidInput,
            "latin square has order " + std::to_string(square.order()) + ", expected " + std::to_string(n));
    Strategy st = latin_strategy(square);
    st.name = name;
    return st;
  }
  fail(Errc::UnknownStrategy, "'" + name + "' (expected shift | naive | baseline | latin:<file> | latin:cyclic)");
}

namespace {

struct TargetCounts {
  std::vector<std::uint64_t> hits;
  TargetCounts& operator+=(const TargetCounts& o) {
    for (std::size_t s = 0; s < hits.size(); ++s) hits[s] += o.hits[s];
    return *this;
  }
};

}  // namespace

ExactEvaluation evaluate_success_exact(const Strategy& strategy, std::size_t guard, unsigned workers) {
  const std::size_t n = strategy.n;
  check_enumerable(n, guard);
  const TargetCounts counts = reduce_permutations(
      n, workers, TargetCounts{std::vector<std::uint64_t>(n, 0)},
      [&](TargetCounts& acc, std::span<const std::size_t> image, std::uint64_t) {
        const Permutation sigma = make_permutation(image);
        const std::size_t h = strategy.hint(sigma);
        if (h >= strategy.m) fail(Errc::InvalidInput, strategy.name + " produced hint outside [0, m)");
        for (std::size_t s = 0; s < n; ++s) {
          const std::size_t g = strategy.guess(h, s);
          if (g >= n) fail(Errc::InvalidInput, strategy.name + " produced guess outside [0, n)");
          acc.hits[s] += (sigma[g] == s);
        }
      });

  ExactEvaluation out;
  out.n = n;
  const BigCount total = factorial(n);
  BigCount sum = 0;
  for (std::size_t s = 0; s < n; ++s) {
    out.successes_per_target.emplace_back(counts.hits[s]);
    out.per_target.emplace_back(BigCount(counts.hits[s]), total);
    sum += counts.hits[s];
  }
  out.overall = ExactProb(sum, total * n);
  const auto worst = std::min_element(out.per_target.begin(), out.per_target.end());
  out.worst = *worst;
  out.worst_target = static_cast<std::size_t>(worst - out.per_target.begin());
  return out;
}

PartitionStrategy::PartitionStrategy(std::size_t n, std::size_t m, std::vector<std::size_t> assignment)
    : n_(n), m_(m), assignment_(std::move(assignment)) {
  require(n >= 1 && n <= kMaxRankableOrder, Errc::InvalidInput, "partition order out of range");
  require(m >= 1, Errc::InvalidInput, "partition needs at least one class");
  require(assignment_.size() == factorial_u64(n), Errc::InvalidInput,
          "assignment has " + std::to_string(assignment_.size()) + " entries, expected " + std::to_string(n) + "!");
  for (std::size_t c : assignment_)
    if (c >= m) fail(Errc::InvalidInput, "class index " + std::to_string(c) + " >= m = " + std::to_string(m));
}

std::vector<std::size_t> PartitionStrategy::class_sizes() const {
  std::vector<std::size_t> sizes(m_, 0);
  for (std::size_t c : assignment_) ++sizes[c];
  return sizes;
}

PartitionStrategy partition_of_strategy(const Strategy& strategy, std::size_t guard) {
  check_enumerable(strategy.n, guard);
  const std::uint64_t total = factorial_u64(strategy.n);
  std::vector<std::size_t> assignment(total);
  for (std::uint64_t r = 0; r < total; ++r) assignment[r] = strategy.hint(lex_unrank(strategy.n, r));
  return PartitionStrategy(strategy.n, strategy.m, std::move(assignment));
}

nlohmann::json partition_to_json(const PartitionStrategy& p) {
  return {{"n", p.n()}, {"m", p.m()}, {"assignment", p.assignment()}};
}

PartitionStrategy partition_from_json(const nlohmann::json& j, std::size_t guard) {
  require(j.is_object() && j.contains("n") && j.contains("m") && j.contains("assignment"), Errc::InvalidInput,
          "partition JSON needs {n, m, assignment}");
  const auto n = j.at("n").get<std::size_t>();
  check_enumerable(n, guard);
  return PartitionStrategy(n, j.at("m").get<std::size_t>(), j.at("assignment").get<std::vector<std::size_t>>());
}

PartitionStrategy load_partition_file(const std::string& path, std::size_t guard) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::InvalidInput, "cannot open " + path);
  try {
    return partition_from_json(nlohmann::json::parse(in), guard);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::InvalidInput, path + ": " + e.what());
  }
}

bool aic_check(const PartitionStrategy& p, std::size_t guard) {
  const std::size_t n = p.n();
  const std::size_t m = p.m();
  check_enumerable(n, guard);
  // occurs[(h * n + i) * n + s]: some member of class h places s at position i.
  std::vector<bool> occurs(m * n * n, false);
  std::vector<bool> nonempty(m, false);
  const std::uint64_t total = factorial_u64(n);
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), std::size_t{0});
  for (std::uint64_t r = 0; r < total; ++r, std::next_permutation(image.begin(), image.end())) {
    const std::size_t h = p.class_of(r);
    nonempty[h] = true;
    for (std::size_t i = 0; i < n; ++i) occurs[(h * n + i) * n + image[i]] = true;
  }
  for (std::size_t s = 0; s < n; ++s) {
    bool every_position_excluded = true;
    for (std::size_t i = 0; i < n && every_position_excluded; ++i) {
      bool excluded = false;
      for (std::size_t h = 0; h < m && !excluded; ++h) excluded = nonempty[h] && !occurs[(h * n + i) * n + s];
      every_position_excluded = excluded;
    }
    if (every_position_excluded) return true;
  }
  return false;
}

}  // namespace permlab
