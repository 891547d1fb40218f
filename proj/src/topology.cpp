#include "combicache/topology.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "combicache/errors.hpp"
#include "combicache/subsets.hpp"

namespace combicache {

RelaySet RelaySet::from_members(const std::vector<RelayId>& members)
{
  std::uint32_t mask = 0;
  for (RelayId h : members) {
    if (h < 1 || h > CombinationNetwork::kMaxRelays) {
      throw ParameterError("relay id out of range: " + std::to_string(h));
    }
    mask |= 1U << (h - 1);
  }
  return RelaySet(mask);
}

std::vector<RelayId> RelaySet::members() const
{
  std::vector<RelayId> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m) + 1);
  }
  return out;
}

std::strong_ordering RelaySet::operator<=>(const RelaySet& o) const
{
  // Lexicographic over ascending members: the first differing lowest
  // element decides; a proper prefix sorts first.
  std::uint32_t a = mask_;
  std::uint32_t b = o.mask_;
  while (a != 0 && b != 0) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) {
      return la <=> lb;
    }
    a &= a - 1;
    b &= b - 1;
  }
  if (a == 0 && b == 0) {
    return std::strong_ordering::equal;
  }
  return a == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

namespace {

std::vector<RelaySet> relay_subsets_of_size(int H, int size)
{
  std::vector<RelaySet> out;
  for_each_combination(H, size, [&](std::span<const int> c) {
    std::uint32_t mask = 0;
    for (int i : c) {
      mask |= 1U << i;
    }
    out.emplace_back(mask);
    return true;
  });
  return out;
}

std::uint64_t small_binom(int n, int k)
{
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

}  // namespace

CombinationNetwork CombinationNetwork::build(int H, int r)
{
  if (H < 1 || H > kMaxRelays || r < 1 || r > H) {
    throw ParameterError("invalid combination network (H=" + std::to_string(H) +
                         ", r=" + std::to_string(r) + "): need 1 <= r <= H <= 31");
  }
  if (small_binom(H, r) > kMaxUsers || small_binom(H, r - 1) > kMaxUsers) {
    throw ParameterError("combination network too large to tabulate (H=" + std::to_string(H) +
                         ", r=" + std::to_string(r) + ")");
  }

  CombinationNetwork net;
  net.H_ = H;
  net.r_ = r;
  net.user_relays_ = relay_subsets_of_size(H, r);
  net.relay_users_.assign(static_cast<std::size_t>(H), {});
  for (std::size_t i = 0; i < net.user_relays_.size(); ++i) {
    const auto k = static_cast<UserId>(i + 1);
    net.user_by_mask_.emplace(net.user_relays_[i].mask(), k);
    for (RelayId h : net.user_relays_[i].members()) {
      net.relay_users_[static_cast<std::size_t>(h - 1)].push_back(k);
    }
  }

  net.small_subsets_ = relay_subsets_of_size(H, r - 1);
  net.small_subset_users_.reserve(net.small_subsets_.size());
  for (std::size_t i = 0; i < net.small_subsets_.size(); ++i) {
    net.small_index_by_mask_.emplace(net.small_subsets_[i].mask(), i);
    net.small_subset_users_.push_back(net.common_users(net.small_subsets_[i]));
  }
  return net;
}

const UserSet& CombinationNetwork::users_of_relay(RelayId h) const
{
  if (h < 1 || h > H_) {
    throw ParameterError("relay id out of range: " + std::to_string(h));
  }
  return relay_users_[static_cast<std::size_t>(h - 1)];
}

RelaySet CombinationNetwork::relays_of_user(UserId k) const
{
  if (k < 1 || k > K()) {
    throw ParameterError("user id out of range: " + std::to_string(k));
  }
  return user_relays_[static_cast<std::size_t>(k - 1)];
}

UserSet CombinationNetwork::common_users(RelaySet J) const
{
  if ((J.mask() & ~all_relays().mask()) != 0) {
    throw ParameterError("relay set not contained in [H]");
  }
  UserSet out;
  if (J.size() > r_) {
    return out;
  }
  // The empty relay set is common to everyone (used for r = 1, Y = {}).
  for (std::size_t i = 0; i < user_relays_.size(); ++i) {
    if (J.subset_of(user_relays_[i])) {
      out.push_back(static_cast<UserId>(i + 1));
    }
  }
  return out;
}

std::optional<UserId> CombinationNetwork::user_with_relays(RelaySet relays) const
{
  if (auto it = user_by_mask_.find(relays.mask()); it != user_by_mask_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::optional<std::size_t> CombinationNetwork::small_subset_index(RelaySet y) const
{
  if (auto it = small_index_by_mask_.find(y.mask()); it != small_index_by_mask_.end()) {
    return it->second;
  }
  return std::nullopt;
}

bool contains(const UserSet& s, UserId k)
{
  return std::binary_search(s.begin(), s.end(), k);
}

UserSet set_intersection(const UserSet& a, const UserSet& b)
{
  UserSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

UserSet set_union(const UserSet& a, const UserSet& b)
{
  UserSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

UserSet set_difference(const UserSet& a, const UserSet& b)
{
  UserSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace combicache
