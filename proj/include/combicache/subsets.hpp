#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace combicache {

/// Visit every k-combination of {0, ..., n-1} in lexicographic order.
/// The callback receives the current combination (ascending) and returns
/// false to stop early. Returns the number of combinations visited.
template <typename Fn>
std::uint64_t for_each_combination(int n, int k, Fn&& fn)
{
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    idx[static_cast<std::size_t>(i)] = i;
  }
  std::uint64_t visited = 0;
  while (true) {
    ++visited;
    if (!fn(std::span<const int>(idx))) {
      return visited;
    }
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) {
      --i;
    }
    if (i < 0) {
      return visited;
    }
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

/// Advance `idx` (ascending, values < n) to the next k-combination in
/// lexicographic order; false when `idx` was the last one.
inline bool next_combination(std::vector<int>& idx, int n)
{
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) {
    --i;
  }
  if (i < 0) {
    return false;
  }
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) {
    idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

}  // namespace combicache
