#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace combicache {

using RelayId = int;  // 1-based
using UserId = int;   // 1-based

/// Sorted, duplicate-free list of user ids.
using UserSet = std::vector<UserId>;

/// A set of relays stored as a bitmask (bit h-1 <-> relay h), H <= 31.
/// Ordering is lexicographic over the ascending member lists, which is the
/// canonical order used for users and for relay subsets everywhere.
class RelaySet {
 public:
  constexpr RelaySet() = default;
  constexpr explicit RelaySet(std::uint32_t mask) : mask_(mask) {}

  static RelaySet from_members(const std::vector<RelayId>& members);

  constexpr std::uint32_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool contains(RelayId h) const { return h >= 1 && h <= 31 && ((mask_ >> (h - 1)) & 1U) != 0; }
  bool subset_of(RelaySet other) const { return (mask_ & ~other.mask_) == 0; }
  std::vector<RelayId> members() const;

  RelaySet operator|(RelaySet o) const { return RelaySet(mask_ | o.mask_); }
  RelaySet operator&(RelaySet o) const { return RelaySet(mask_ & o.mask_); }
  RelaySet without(RelayId h) const { return RelaySet(mask_ & ~(1U << (h - 1))); }

  bool operator==(const RelaySet&) const = default;
  std::strong_ordering operator<=>(const RelaySet& o) const;

 private:
  std::uint32_t mask_ = 0;
};

/// The (H, r) combination network: a server, H relays, and one user per
/// r-subset of relays. Users are numbered by the lexicographic rank of
/// their relay subset. Immutable after construction.
class CombinationNetwork {
 public:
  static constexpr int kMaxRelays = 31;
  static constexpr std::uint64_t kMaxUsers = 1U << 22;

  /// Throws ParameterError unless 1 <= r <= H <= 31 and C(H, r) is small
  /// enough to tabulate.
  static CombinationNetwork build(int H, int r);

  int H() const { return H_; }
  int r() const { return r_; }
  /// K = C(H, r)
  int K() const { return static_cast<int>(user_relays_.size()); }
  /// K' = C(H-1, r-1), users per relay.
  int K_prime() const { return static_cast<int>(relay_users_.front().size()); }
  /// K'' = C(H, r-1), number of (r-1)-subsets of relays.
  int K_double_prime() const { return static_cast<int>(small_subsets_.size()); }

  const UserSet& users_of_relay(RelayId h) const;
  RelaySet relays_of_user(UserId k) const;
  /// P_J: users connected to every relay in J. Empty when |J| > r.
  UserSet common_users(RelaySet J) const;
  std::optional<UserId> user_with_relays(RelaySet relays) const;

  /// All (r-1)-subsets of relays in canonical order; index i is the
  /// position used by collections.
  const std::vector<RelaySet>& small_subsets() const { return small_subsets_; }
  /// P_Y for small_subsets()[i].
  const UserSet& common_users_of_small_subset(std::size_t i) const { return small_subset_users_[i]; }
  std::optional<std::size_t> small_subset_index(RelaySet y) const;

  RelaySet all_relays() const { return RelaySet((1U << H_) - 1U); }
  const std::vector<RelaySet>& users() const { return user_relays_; }

 private:
  CombinationNetwork() = default;

  int H_ = 0;
  int r_ = 0;
  std::vector<RelaySet> user_relays_;
  std::vector<UserSet> relay_users_;
  std::vector<RelaySet> small_subsets_;
  std::vector<UserSet> small_subset_users_;
  std::unordered_map<std::uint32_t, UserId> user_by_mask_;
  std::unordered_map<std::uint32_t, std::size_t> small_index_by_mask_;
};

bool contains(const UserSet& s, UserId k);
UserSet set_intersection(const UserSet& a, const UserSet& b);
UserSet set_union(const UserSet& a, const UserSet& b);
UserSet set_difference(const UserSet& a, const UserSet& b);

}  // namespace combicache
