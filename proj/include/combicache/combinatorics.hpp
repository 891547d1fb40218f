#pragma once

#include <compare>
#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

#include "combicache/rational.hpp"
#include "combicache/topology.hpp"

namespace combicache {

/// C(x, y), zero when x < 0, y < 0 or x < y.
BigInt binom(long long x, long long y);

/// Same convention, for arguments known to fit; throws ParameterError on
/// 64-bit overflow.
std::uint64_t binom_u64(long long x, long long y);

/// Default cap on exhaustive enumerations (collections, demand vectors,
/// MAN subfiles). Overridden by the COMBICACHE_MAX_ENUM environment
/// variable.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;
std::uint64_t enumeration_cap();

/// A set of q distinct (r-1)-subsets of relays, kept sorted so equal
/// collections compare equal structurally.
struct Collection {
  std::vector<RelaySet> subsets;

  /// Sorts, rejects duplicates, and checks every member has `subset_size`
  /// relays. Throws ParameterError.
  static Collection canonical(std::vector<RelaySet> subsets, int subset_size);

  std::size_t size() const { return subsets.size(); }
  RelaySet relay_union() const;

  auto operator<=>(const Collection&) const = default;
  bool operator==(const Collection&) const = default;
};

/// How a collection's symbol relates to one user.
enum class CollectionClass {
  Cached,     // no member inside H_k
  Delivered,  // exactly one member inside H_k and H_k not covered
  Ignored,    // H_k covered by the union
};

const char* to_string(CollectionClass c);

/// Lazy range over all C(K'', q) collections in canonical order.
class CollectionRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Collection;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const CombinationNetwork* net, int q);

    Collection operator*() const;
    const std::vector<int>& indices() const { return idx_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || idx_ == o.idx_); }

   private:
    const CombinationNetwork* net_ = nullptr;
    std::vector<int> idx_;
    bool done_ = true;
  };

  CollectionRange(const CombinationNetwork& net, int q) : net_(&net), q_(q) {}
  iterator begin() const { return iterator(net_, q_); }
  iterator end() const { return iterator(); }

 private:
  const CombinationNetwork* net_;
  int q_;
};

/// Throws ParameterError unless 1 <= q <= K''.
CollectionRange enumerate_collections(const CombinationNetwork& net, int q);

/// Collection built from indices into net.small_subsets() (ascending).
Collection collection_from_indices(const CombinationNetwork& net, const std::vector<int>& idx);

CollectionClass classify(const CombinationNetwork& net, const Collection& Q, UserId k);

struct ClassCensus {
  std::uint64_t cached = 0;
  std::uint64_t delivered = 0;
  std::uint64_t ignored = 0;
};

/// Counts of each class over all q-collections, for user k.
ClassCensus class_census(const CombinationNetwork& net, int q, UserId k);

/// Closed-form count of q-collections whose relay union is not [H] and
/// that have no member inside a fixed user's relay set. Exact alternating
/// sum over the size a of the union, in arbitrary precision.
BigInt lemma1_G(int H, int r, int q);

/// Direct enumeration of the same count for user k. Refuses (throws
/// EnumerationCapError) when C(K'', q) exceeds `cap`.
std::uint64_t lemma1_G_bruteforce(const CombinationNetwork& net, int q, UserId k,
                                  std::optional<std::uint64_t> cap = std::nullopt);

}  // namespace combicache
