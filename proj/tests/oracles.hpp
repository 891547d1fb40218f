#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these call into the algorithm under test.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "combicache/rational.hpp"

namespace oracle {

using combicache::BigInt;
using combicache::Rational;

/// Bitwise carry-less product reduced by x^16 + x^12 + x^3 + x + 1.
inline std::uint16_t gf_mul(std::uint16_t a, std::uint16_t b)
{
  std::uint32_t acc = 0;
  for (int i = 0; i < 16; ++i) {
    if ((b >> i) & 1U) {
      acc ^= static_cast<std::uint32_t>(a) << i;
    }
  }
  for (int bit = 31; bit >= 16; --bit) {
    if ((acc >> bit) & 1U) {
      acc ^= 0x1100BU << (bit - 16);
    }
  }
  return static_cast<std::uint16_t>(acc);
}

inline std::uint16_t gf_pow(std::uint16_t a, std::uint32_t e)
{
  std::uint16_t r = 1;
  while (e) {
    if (e & 1U) {
      r = gf_mul(r, a);
    }
    a = gf_mul(a, a);
    e >>= 1;
  }
  return r;
}

/// a^(2^16 - 2) = a^-1 for a != 0.
inline std::uint16_t gf_inv(std::uint16_t a) { return gf_pow(a, 65534); }

/// Value at x of the polynomial through (i, y[i]) for i < y.size(),
/// by the textbook Lagrange formula.
inline std::uint16_t lagrange_eval(const std::vector<std::uint16_t>& y, std::uint16_t x)
{
  std::uint16_t acc = 0;
  const auto k = static_cast<std::uint16_t>(y.size());
  for (std::uint16_t i = 0; i < k; ++i) {
    std::uint16_t num = 1;
    std::uint16_t den = 1;
    for (std::uint16_t m = 0; m < k; ++m) {
      if (m != i) {
        num = gf_mul(num, static_cast<std::uint16_t>(x ^ m));
        den = gf_mul(den, static_cast<std::uint16_t>(i ^ m));
      }
    }
    acc ^= gf_mul(y[i], gf_mul(num, gf_inv(den)));
  }
  return acc;
}

inline BigInt choose(long long n, long long k)
{
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

/// All k-subsets of {1..n} as sorted vectors, lexicographic, by recursion.
inline void subsets_rec(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v <= n; ++v) {
    cur.push_back(v);
    subsets_rec(n, k, v + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> subsets(int n, int k)
{
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets_rec(n, k, 1, cur, out);
  return out;
}

inline bool includes(const std::vector<int>& big, const std::vector<int>& small)
{
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Number of q-sets of (r-1)-subsets of [H] such that user `user_relays`
/// caches the symbol (it is adjacent to no P_Y) and whose union is not [H].
inline std::uint64_t improved_cached_count(int H, int r, int q, const std::vector<int>& user_relays)
{
  const auto small = subsets(H, r - 1);
  std::uint64_t count = 0;
  std::vector<int> idx(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    idx[static_cast<std::size_t>(i)] = i;
  }
  const int n = static_cast<int>(small.size());
  if (q > n) {
    return 0;
  }
  while (true) {
    std::set<int> uni;
    bool me_in_some_P = false;
    for (int i : idx) {
      const auto& Y = small[static_cast<std::size_t>(i)];
      uni.insert(Y.begin(), Y.end());
      // The user is in P_Y exactly when Y is inside its relay set.
      me_in_some_P = me_in_some_P || includes(user_relays, Y);
    }
    if (!me_in_some_P && static_cast<int>(uni.size()) != H) {
      ++count;
    }
    int i = q - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - q + i) {
      --i;
    }
    if (i < 0) {
      break;
    }
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < q; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return count;
}

struct Pt {
  Rational M;
  Rational R;
};

/// min over all points and all chords of the chord's value at M: the lower
/// convex envelope by brute force over pairs.
inline Rational envelope_value(const std::vector<Pt>& pts, const Rational& M)
{
  bool have = false;
  Rational best;
  for (const auto& a : pts) {
    if (a.M == M && (!have || a.R < best)) {
      best = a.R;
      have = true;
    }
    for (const auto& b : pts) {
      if (a.M < M && M < b.M) {
        const Rational v = a.R + (b.R - a.R) * (M - a.M) / (b.M - a.M);
        if (!have || v < best) {
          best = v;
          have = true;
        }
      }
    }
  }
  return best;
}

}  // namespace oracle
