#pragma once

#include <cstdint>

namespace permlab {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 because its
/// output sequence is fully specified here and identical on every platform.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return finalize(state_);
  }

  constexpr std::uint64_t operator()() noexcept { return next(); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  /// Uniform integer in [0, bound) by rejection; bound must be positive.
  constexpr std::uint64_t uniform_below(std::uint64_t bound) noexcept {
    // Reject the lowest (2^64 mod bound) outputs so every residue is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

  static constexpr std::uint64_t finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Seed for task `index` of a run with master seed `master`. Every sampled
/// experiment seeds trial t with derive_seed(seed, t), so results do not
/// depend on how trials are scheduled across workers.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return SplitMix64::finalize(SplitMix64::finalize(master) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

}  // namespace permlab
