#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace vlab {

// Pairwise (cascade) summation; error grows like O(log n) instead of O(n).
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  constexpr std::size_t kBlock = 32;
  if (xs.size() <= kBlock) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace vlab
