#include <doctest.h>

#include "combicache/errors.hpp"
#include "combicache/topology.hpp"
#include "oracles.hpp"

using namespace combicache;

namespace {

RelaySet rs(std::vector<RelayId> v) { return RelaySet::from_members(v); }

}  // namespace

TEST_SUITE("topology")
{
  TEST_CASE("small networks from the worked examples")
  {
    const auto fig = CombinationNetwork::build(4, 2);
    CHECK(fig.K() == 6);
    CHECK(fig.relays_of_user(1).members() == std::vector<RelayId>{1, 2});
    CHECK(fig.relays_of_user(6).members() == std::vector<RelayId>{3, 4});
    CHECK(fig.relays_of_user(3).members() == std::vector<RelayId>{1, 4});
    CHECK(fig.users_of_relay(1) == UserSet{1, 2, 3});
    CHECK(fig.common_users(rs({1, 2})) == UserSet{1});
    CHECK(fig.common_users(rs({2})) == UserSet{1, 4, 5});
    CHECK(fig.common_users(rs({4})) == UserSet{3, 5, 6});

    const auto ex1 = CombinationNetwork::build(5, 3);
    CHECK(ex1.K() == 10);
    CHECK(ex1.K_prime() == 6);
    CHECK(ex1.K_double_prime() == 10);
    CHECK(ex1.users_of_relay(1) == UserSet{1, 2, 3, 4, 5, 6});
  }

  TEST_CASE("full connectivity")
  {
    const auto net = CombinationNetwork::build(5, 5);
    CHECK(net.K() == 1);
    CHECK(net.relays_of_user(1) == net.all_relays());
    for (RelayId h = 1; h <= 5; ++h) {
      CHECK(net.users_of_relay(h) == UserSet{1});
    }
  }

  TEST_CASE("users are the lexicographic r-subsets")
  {
    for (auto [H, r] : {std::pair{6, 3}, {7, 2}, {5, 1}}) {
      const auto net = CombinationNetwork::build(H, r);
      const auto expect = oracle::subsets(H, r);
      REQUIRE(static_cast<std::size_t>(net.K()) == expect.size());
      for (UserId k = 1; k <= net.K(); ++k) {
        CHECK(net.relays_of_user(k).members() == expect[static_cast<std::size_t>(k - 1)]);
        CHECK(net.common_users(net.relays_of_user(k)) == UserSet{k});
        CHECK(net.user_with_relays(net.relays_of_user(k)) == k);
      }
    }
  }

  TEST_CASE("counting invariants")
  {
    for (int H = 2; H <= 8; ++H) {
      for (int r = 1; r <= H; ++r) {
        const auto net = CombinationNetwork::build(H, r);
        std::size_t total = 0;
        for (RelayId h = 1; h <= H; ++h) {
          REQUIRE(net.users_of_relay(h).size() == static_cast<std::size_t>(net.K_prime()));
          total += net.users_of_relay(h).size();
        }
        CHECK(total == static_cast<std::size_t>(r * net.K()));
        if (r < 2) {
          continue;
        }
        for (std::size_t i = 0; i < net.small_subsets().size(); ++i) {
          const RelaySet Y = net.small_subsets()[i];
          const UserSet& P = net.common_users_of_small_subset(i);
          REQUIRE(P.size() == static_cast<std::size_t>(H - r + 1));
          CHECK(P == net.common_users(Y));
          // Each user in P_Y has its own extra relay outside Y.
          std::uint32_t seen = 0;
          for (UserId k : P) {
            const std::uint32_t extra = net.relays_of_user(k).mask() & ~Y.mask();
            CHECK(std::popcount(extra) == 1);
            CHECK((seen & extra) == 0);
            seen |= extra;
          }
        }
      }
    }
  }

  TEST_CASE("common users of a union is the intersection")
  {
    const auto net = CombinationNetwork::build(7, 3);
    for (std::uint32_t a = 1; a < 128; a += 5) {
      for (std::uint32_t b = 1; b < 128; b += 7) {
        const RelaySet A(a);
        const RelaySet B(b);
        CHECK(net.common_users(A | B) == set_intersection(net.common_users(A), net.common_users(B)));
      }
    }
    CHECK(net.common_users(rs({1, 2, 3, 4})).empty());
  }

  TEST_CASE("invalid parameters")
  {
    CHECK_THROWS_AS(CombinationNetwork::build(3, 4), ParameterError);
    CHECK_THROWS_AS(CombinationNetwork::build(0, 0), ParameterError);
    CHECK_THROWS_AS(CombinationNetwork::build(4, 0), ParameterError);
    CHECK_THROWS_AS(CombinationNetwork::build(32, 2), ParameterError);
    const auto net = CombinationNetwork::build(4, 2);
    CHECK_THROWS_AS(net.users_of_relay(0), ParameterError);
    CHECK_THROWS_AS(net.users_of_relay(5), ParameterError);
    CHECK_THROWS_AS(net.relays_of_user(7), ParameterError);
    CHECK_THROWS_AS(net.common_users(RelaySet::from_members({5})), ParameterError);
    // The empty relay set is shared by every user.
    CHECK(net.common_users(RelaySet()).size() == 6);
  }
}
