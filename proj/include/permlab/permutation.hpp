#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "permlab/rng.hpp"

namespace permlab {

/// A bijection on {0, ..., n-1}, stored as its image array: image()[i] is the
/// value placed at position i. Immutable once constructed.
class Permutation {
 public:
  /// Validates that `image` is a non-empty bijection; throws NotABijection.
  explicit Permutation(std::vector<std::size_t> image);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return image_.size(); }
  std::size_t operator[](std::size_t position) const noexcept { return image_[position]; }
  std::span<const std::size_t> image() const noexcept { return image_; }

  /// Position holding `value`, i.e. the inverse permutation evaluated at value.
  std::size_t position_of(std::size_t value) const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.image_ <=> b.image_; }

 private:
  struct Unchecked {};
  Permutation(Unchecked, std::vector<std::size_t> image) noexcept : image_(std::move(image)) {}

  friend Permutation random_permutation(std::size_t, SplitMix64&);
  friend Permutation apply_transposition(const Permutation&, std::size_t, std::size_t);
  friend Permutation lex_unrank(std::size_t, std::uint64_t);
  friend Permutation rotate_values(const Permutation&, std::size_t);

  std::vector<std::size_t> image_;
};

/// Counts S_l = |{i : (i - p(i)) mod n == l}| for every shift class l.
class ShiftHistogram {
 public:
  explicit ShiftHistogram(std::vector<std::size_t> counts);

  std::size_t size() const noexcept { return counts_.size(); }
  std::size_t operator[](std::size_t shift) const noexcept { return counts_[shift]; }
  std::span<const std::size_t> counts() const noexcept { return counts_; }
  std::size_t max_count() const noexcept;

  friend bool operator==(const ShiftHistogram&, const ShiftHistogram&) = default;

 private:
  std::vector<std::size_t> counts_;
};

Permutation make_permutation(std::span<const std::size_t> values);
Permutation make_permutation(std::initializer_list<std::size_t> values);

/// Uniform permutation by Fisher-Yates from index n-1 downward, drawing each
/// swap partner with SplitMix64::uniform_below. Advances `rng`.
Permutation random_permutation(std::size_t n, SplitMix64& rng);

/// In-place variant used by the hot simulation loops; `image` is resized to n.
void random_permutation_into(std::size_t n, SplitMix64& rng, std::vector<std::size_t>& image);

std::vector<std::size_t> shift_vector(const Permutation& p);
ShiftHistogram shift_histogram(const Permutation& p);
ShiftHistogram shift_histogram(std::span<const std::size_t> image);

/// Smallest shift class attaining the maximum count.
std::size_t argmax_shift(const ShiftHistogram& h) noexcept;

Permutation apply_transposition(const Permutation& p, std::size_t a, std::size_t b);
std::size_t fixed_points(const Permutation& p) noexcept;

/// p_l(i) = (p(i) + l) mod n.
Permutation rotate_values(const Permutation& p, std::size_t shift);

/// Maximum order for which n! fits in 64 bits.
inline constexpr std::size_t kMaxRankableOrder = 20;

std::uint64_t factorial_u64(std::size_t n);
std::uint64_t lex_rank(const Permutation& p);
Permutation lex_unrank(std::size_t n, std::uint64_t rank);

/// The 52-card deck permutation used by the worked example (hint 29).
const Permutation& example_deck();

/// Accepts a JSON array or whitespace/comma separated integers.
Permutation parse_permutation(const std::string& text);
Permutation load_permutation_file(const std::string& path);

}  // namespace permlab

namespace nlohmann {
template <>
struct adl_serializer<permlab::Permutation> {
  static permlab::Permutation from_json(const json& j) {
    return permlab::make_permutation(j.get<std::vector<std::size_t>>());
  }
  static void to_json(json& j, const permlab::Permutation& p) {
    j = std::vector<std::size_t>(p.image().begin(), p.image().end());
  }
};
}  // namespace nlohmann
