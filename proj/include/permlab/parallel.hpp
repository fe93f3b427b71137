#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <numeric>
#include <thread>
#include <vector>

#include "permlab/permutation.hpp"

namespace permlab {

/// Worker count used when a caller passes 0.
inline unsigned default_workers() noexcept {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, total) into contiguous chunks, runs `visit(acc, begin, end)` for
/// each chunk on its own thread with a copy of `init`, then merges the chunk
/// accumulators in chunk order with `acc += other`. Accumulators must hold
/// exact (integer) quantities so the result is independent of `workers`.
template <class Acc, class Visit>
Acc parallel_reduce(std::uint64_t total, unsigned workers, const Acc& init, Visit visit) {
  if (workers == 0) workers = default_workers();
  const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total));
  if (chunks == 1) {
    Acc acc = init;
    if (total > 0) visit(acc, std::uint64_t{0}, total);
    return acc;
  }
  std::vector<Acc> partial(chunks, init);
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> threads;
    threads.reserve(chunks);
    for (std::uint64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = total * c / chunks;
      const std::uint64_t end = total * (c + 1) / chunks;
      threads.emplace_back([&, c, begin, end] {
        try {
          visit(partial[c], begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Acc acc = init;
  for (const auto& p : partial) acc += p;
  return acc;
}

/// Visits every permutation of order n (n <= 20) in lexicographic rank order,
/// split across workers by contiguous rank ranges. `visit(acc, image, rank)`
/// receives the image as a span.
template <class Acc, class Visit>
Acc reduce_permutations(std::size_t n, unsigned workers, const Acc& init, Visit visit) {
  const std::uint64_t total = factorial_u64(n);
  return parallel_reduce(total, workers, init, [&](Acc& acc, std::uint64_t begin, std::uint64_t end) {
    const Permutation start = lex_unrank(n, begin);
    std::vector<std::size_t> image(start.image().begin(), start.image().end());
    for (std::uint64_t rank = begin; rank < end; ++rank) {
      visit(acc, std::span<const std::size_t>(image), rank);
      std::next_permutation(image.begin(), image.end());
    }
  });
}

}  // namespace permlab
