#include "permlab/permutation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "permlab/errors.hpp"

namespace permlab {

namespace {

void validate_bijection(std::span<const std::size_t> values) {
  require(!values.empty(), Errc::NotABijection, "permutation must have at least one entry");
  std::vector<bool> seen(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t v = values[i];
    if (v >= values.size())
      fail(Errc::NotABijection,
           "value " + std::to_string(v) + " at position " + std::to_string(i) + " is out of range");
    if (seen[v]) fail(Errc::NotABijection, "value " + std::to_string(v) + " occurs twice");
    seen[v] = true;
  }
}

}  // namespace

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  validate_bijection(image_);
}

Permutation Permutation::identity(std::size_t n) {
  require(n >= 1, Errc::NotABijection, "order must be positive");
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), std::size_t{0});
  return Permutation(Unchecked{}, std::move(image));
}

std::size_t Permutation::position_of(std::size_t value) const {
  const auto it = std::find(image_.begin(), image_.end(), value);
  require(it != image_.end(), Errc::IndexOutOfRange, "value " + std::to_string(value) + " not in range");
  return static_cast<std::size_t>(it - image_.begin());
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return Permutation(Unchecked{}, std::move(inv));
}

ShiftHistogram::ShiftHistogram(std::vector<std::size_t> counts) : counts_(std::move(counts)) {
  require(!counts_.empty(), Errc::InvalidInput, "histogram order must be positive");
  const std::size_t total = std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
  if (total != counts_.size())
    fail(Errc::InvalidInput,
         "histogram counts sum to " + std::to_string(total) + ", expected " + std::to_string(counts_.size()));
}

std::size_t ShiftHistogram::max_count() const noexcept {
  return *std::max_element(counts_.begin(), counts_.end());
}

Permutation make_permutation(std::span<const std::size_t> values) {
  return Permutation(std::vector<std::size_t>(values.begin(), values.end()));
}

Permutation make_permutation(std::initializer_list<std::size_t> values) {
  return Permutation(std::vector<std::size_t>(values));
}

void random_permutation_into(std::size_t n, SplitMix64& rng, std::vector<std::size_t>& image) {
  image.resize(n);
  std::iota(image.begin(), image.end(), std::size_t{0});
  for (std::size_t i = n; i-- > 1;) {
    const auto j = static_cast<std::size_t>(rng.uniform_below(i + 1));
    std::swap(image[i], image[j]);
  }
}

Permutation random_permutation(std::size_t n, SplitMix64& rng) {
  require(n >= 1, Errc::NotABijection, "order must be positive");
  std::vector<std::size_t> image;
  random_permutation_into(n, rng, image);
  return Permutation(Permutation::Unchecked{}, std::move(image));
}

std::vector<std::size_t> shift_vector(const Permutation& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (i + n - p[i]) % n;
  return v;
}

ShiftHistogram shift_histogram(std::span<const std::size_t> image) {
  const std::size_t n = image.size();
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++counts[(i + n - image[i]) % n];
  return ShiftHistogram(std::move(counts));
}

ShiftHistogram shift_histogram(const Permutation& p) { return shift_histogram(p.image()); }

std::size_t argmax_shift(const ShiftHistogram& h) noexcept {
  const auto counts = h.counts();
  return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

Permutation apply_transposition(const Permutation& p, std::size_t a, std::size_t b) {
  require(a < p.size() && b < p.size(), Errc::PositionOutOfRange,
          "swap (" + std::to_string(a) + ", " + std::to_string(b) + ") outside order " + std::to_string(p.size()));
  std::vector<std::size_t> image(p.image().begin(), p.image().end());
  std::swap(image[a], image[b]);
  return Permutation(Permutation::Unchecked{}, std::move(image));
}

std::size_t fixed_points(const Permutation& p) noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) count += (p[i] == i);
  return count;
}

Permutation rotate_values(const Permutation& p, std::size_t shift) {
  const std::size_t n = p.size();
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = (p[i] + shift) % n;
  return Permutation(Permutation::Unchecked{}, std::move(image));
}

std::uint64_t factorial_u64(std::size_t n) {
  require(n <= kMaxRankableOrder, Errc::RankOutOfRange, std::to_string(n) + "! does not fit in 64 bits");
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

std::uint64_t lex_rank(const Permutation& p) {
  const std::size_t n = p.size();
  require(n <= kMaxRankableOrder, Errc::RankOutOfRange, "order " + std::to_string(n) + " too large to rank");
  std::uint64_t rank = 0;
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller_unused = 0;
    for (std::size_t v = 0; v < p[i]; ++v) smaller_unused += !used[v];
    used[p[i]] = true;
    rank += smaller_unused * factorial_u64(n - 1 - i);
  }
  return rank;
}

Permutation lex_unrank(std::size_t n, std::uint64_t rank) {
  require(n >= 1 && n <= kMaxRankableOrder, Errc::RankOutOfRange, "order " + std::to_string(n) + " cannot be ranked");
  require(rank < factorial_u64(n), Errc::RankOutOfRange,
          "rank " + std::to_string(rank) + " >= " + std::to_string(n) + "!");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<std::size_t> image;
  image.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t block = factorial_u64(n - 1 - i);
    const auto idx = static_cast<std::size_t>(rank / block);
    rank %= block;
    image.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(Permutation::Unchecked{}, std::move(image));
}

const Permutation& example_deck() {
  static const Permutation deck = make_permutation({
      49, 17, 1,  38, 27, 7,  21, 25, 45, 3,  51, 9,  35, 36, 11, 33, 23, 8,
      46, 18, 13, 28, 26, 14, 2,  5,  10, 39, 48, 32, 29, 40, 19, 4,  12, 41,
      50, 43, 6,  22, 34, 44, 24, 15, 16, 20, 0,  47, 30, 42, 31, 37,
  });
  return deck;
}

Permutation parse_permutation(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::InvalidInput, std::string("malformed permutation JSON: ") + e.what());
    }
    require(j.is_array(), Errc::InvalidInput, "permutation JSON must be an array");
    std::vector<std::size_t> values;
    for (const auto& item : j) {
      require(item.is_number_unsigned(), Errc::InvalidInput, "permutation entries must be non-negative integers");
      values.push_back(item.get<std::size_t>());
    }
    return Permutation(std::move(values));
  }
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<std::size_t> values;
  std::string token;
  while (in >> token) {
    if (token.front() == '#') {
      std::getline(in, token);
      continue;
    }
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(token, &used);
      require(used == token.size() && token.front() != '-', Errc::InvalidInput, "bad integer '" + token + "'");
      values.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      fail(Errc::InvalidInput, "bad integer '" + token + "'");
    }
  }
  return Permutation(std::move(values));
}

Permutation load_permutation_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::InvalidInput, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_permutation(buffer.str());
}

}  // namespace permlab
