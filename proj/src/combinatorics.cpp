#include "combicache/combinatorics.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "combicache/errors.hpp"
#include "combicache/subsets.hpp"

namespace combicache {

BigInt binom(long long x, long long y)
{
  if (x < 0 || y < 0 || x < y) {
    return 0;
  }
  y = std::min(y, x - y);
  BigInt c = 1;
  for (long long i = 1; i <= y; ++i) {
    c *= (x - y + i);
    c /= i;
  }
  return c;
}

std::uint64_t binom_u64(long long x, long long y)
{
  const BigInt c = binom(x, y);
  if (c > std::numeric_limits<std::uint64_t>::max()) {
    throw ParameterError("binomial C(" + std::to_string(x) + "," + std::to_string(y) +
                         ") does not fit in 64 bits");
  }
  return c.convert_to<std::uint64_t>();
}

std::uint64_t enumeration_cap()
{
  if (const char* env = std::getenv("COMBICACHE_MAX_ENUM"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return v;
    }
  }
  return kDefaultEnumerationCap;
}

Collection Collection::canonical(std::vector<RelaySet> subsets, int subset_size)
{
  std::sort(subsets.begin(), subsets.end());
  if (std::adjacent_find(subsets.begin(), subsets.end()) != subsets.end()) {
    throw ParameterError("collection has duplicate relay subsets");
  }
  for (const auto& y : subsets) {
    if (y.size() != subset_size) {
      throw ParameterError("collection member has wrong size");
    }
  }
  return Collection{std::move(subsets)};
}

RelaySet Collection::relay_union() const
{
  RelaySet u;
  for (const auto& y : subsets) {
    u = u | y;
  }
  return u;
}

const char* to_string(CollectionClass c)
{
  switch (c) {
    case CollectionClass::Cached:
      return "cached";
    case CollectionClass::Delivered:
      return "delivered";
    case CollectionClass::Ignored:
      return "ignored";
  }
  return "?";
}

CollectionRange::iterator::iterator(const CombinationNetwork* net, int q) : net_(net), done_(false)
{
  idx_.resize(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    idx_[static_cast<std::size_t>(i)] = i;
  }
  if (q > net->K_double_prime()) {
    done_ = true;
  }
}

Collection CollectionRange::iterator::operator*() const
{
  return collection_from_indices(*net_, idx_);
}

CollectionRange::iterator& CollectionRange::iterator::operator++()
{
  if (!done_ && !next_combination(idx_, net_->K_double_prime())) {
    done_ = true;
  }
  return *this;
}

CollectionRange enumerate_collections(const CombinationNetwork& net, int q)
{
  if (q < 1 || q > net.K_double_prime()) {
    throw ParameterError("q=" + std::to_string(q) + " outside [1, K''=" +
                         std::to_string(net.K_double_prime()) + "]");
  }
  return CollectionRange(net, q);
}

Collection collection_from_indices(const CombinationNetwork& net, const std::vector<int>& idx)
{
  Collection c;
  c.subsets.reserve(idx.size());
  for (int i : idx) {
    c.subsets.push_back(net.small_subsets()[static_cast<std::size_t>(i)]);
  }
  return c;
}

CollectionClass classify(const CombinationNetwork& net, const Collection& Q, UserId k)
{
  const RelaySet hk = net.relays_of_user(k);
  int inside = 0;
  for (const auto& y : Q.subsets) {
    if (y.subset_of(hk)) {
      ++inside;
    }
  }
  if (inside == 0) {
    return CollectionClass::Cached;
  }
  if (hk.subset_of(Q.relay_union())) {
    return CollectionClass::Ignored;
  }
  // Two distinct (r-1)-subsets of H_k already cover H_k, so here inside == 1.
  return CollectionClass::Delivered;
}

ClassCensus class_census(const CombinationNetwork& net, int q, UserId k)
{
  ClassCensus census;
  for (const Collection& Q : enumerate_collections(net, q)) {
    switch (classify(net, Q, k)) {
      case CollectionClass::Cached:
        ++census.cached;
        break;
      case CollectionClass::Delivered:
        ++census.delivered;
        break;
      case CollectionClass::Ignored:
        ++census.ignored;
        break;
    }
  }
  return census;
}

BigInt lemma1_G(int H, int r, int q)
{
  BigInt total = 0;
  for (int a = r - 1; a <= H - 1; ++a) {
    const BigInt subsets_in_a = binom(a, r - 1);
    const long long s = subsets_in_a.convert_to<long long>();
    // Union of size a containing all of H_k.
    const BigInt x1 = binom(H - r, a - r) * binom(s - r, q);
    // Union meeting H_k in exactly r-1 relays.
    const BigInt y1 = BigInt(r) * binom(H - r, a - r + 1) * binom(s - 1, q);
    // Union meeting H_k in fewer than r-1 relays.
    const BigInt z1 =
        (binom(H, a) - BigInt(r) * binom(H - r, a - r + 1) - binom(H - r, a - r)) * binom(s, q);
    const BigInt term = x1 + y1 + z1;
    if ((H - a + 1) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

std::uint64_t lemma1_G_bruteforce(const CombinationNetwork& net, int q, UserId k,
                                  std::optional<std::uint64_t> cap)
{
  if (q < 1 || q > net.K_double_prime()) {
    throw ParameterError("q out of range for brute-force count");
  }
  const std::uint64_t limit = cap.value_or(enumeration_cap());
  if (binom(net.K_double_prime(), q) > limit) {
    throw EnumerationCapError("C(K''=" + std::to_string(net.K_double_prime()) + ", q=" +
                              std::to_string(q) + ") exceeds enumeration cap " +
                              std::to_string(limit));
  }
  const std::uint32_t hk = net.relays_of_user(k).mask();
  const std::uint32_t full = net.all_relays().mask();
  const auto& subsets = net.small_subsets();

  std::uint64_t count = 0;
  for_each_combination(net.K_double_prime(), q, [&](std::span<const int> c) {
    std::uint32_t u = 0;
    bool touches_user = false;
    for (int i : c) {
      const std::uint32_t y = subsets[static_cast<std::size_t>(i)].mask();
      u |= y;
      touches_user = touches_user || ((y & ~hk) == 0);
    }
    if (u != full && !touches_user) {
      ++count;
    }
    return true;
  });
  return count;
}

}  // namespace combicache
