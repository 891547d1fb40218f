#include <doctest.h>

#include <cstdlib>
#include <map>
#include <set>

#include "combicache/delivery.hpp"
#include "combicache/errors.hpp"
#include "combicache/subsets.hpp"
#include "oracles.hpp"

using namespace combicache;

namespace {

Rational formula_load(const CombinationNetwork& net, const PlacementLayout& L)
{
  return Rational(net.K(), net.H()) * (Rational(1) - L.M / L.N) / *L.g;
}

}  // namespace

TEST_SUITE("delivery")
{
  TEST_CASE("SRDS relay choice")
  {
    const auto ex1 = CombinationNetwork::build(5, 3);
    CHECK(srds_best_relays(ex1, 1, UserSet{4, 5, 6, 7, 8, 9, 10}) == std::vector<RelayId>{3});
    const auto ex2 = CombinationNetwork::build(4, 2);
    CHECK(srds_best_relays(ex2, 1, UserSet{2}) == std::vector<RelayId>{1});
    CHECK(srds_best_relays(ex2, 1, UserSet{}) == std::vector<RelayId>{1, 2});
    CHECK_THROWS_AS(srds_best_relays(ex2, 1, UserSet{1, 2}), ParameterError);
  }

  TEST_CASE("Q' construction")
  {
    const auto net = CombinationNetwork::build(4, 2);
    const Collection Q = construct_q_prime(net, 1, 1, UserSet{1, 2});
    CHECK(key_label(Q) == "Q={{2},{4}}");
    const Collection single = construct_q_prime(net, 1, 1, UserSet{1, 2, 3});
    REQUIRE(single.size() == 1);
    CHECK(single.subsets.front() == RelaySet::from_members({2}));
    CHECK_THROWS_AS(construct_q_prime(net, 1, 3, UserSet{1}), ParameterError);
    CHECK_THROWS_AS(construct_q_prime(net, 1, 1, UserSet{2, 3}), ParameterError);
    CHECK_THROWS_AS(construct_q_prime(net, 1, 1, UserSet{1, 4}), ParameterError);
  }

  TEST_CASE("Q' is injective with the expected shape")
  {
    for (auto [H, r] : {std::pair{4, 2}, {5, 2}, {5, 3}, {6, 2}, {6, 3}, {7, 2}}) {
      const auto net = CombinationNetwork::build(H, r);
      for (int g = 1; g <= net.K_prime(); ++g) {
        const int q = net.K_prime() - g + 1;
        for (UserId k = 1; k <= net.K(); ++k) {
          std::set<Collection> seen;
          for (RelayId h : net.relays_of_user(k).members()) {
            const UserSet others = set_difference(net.users_of_relay(h), UserSet{k});
            for_each_combination(static_cast<int>(others.size()), g - 1, [&](std::span<const int> c) {
              UserSet J{k};
              for (int i : c) {
                J.push_back(others[static_cast<std::size_t>(i)]);
              }
              std::sort(J.begin(), J.end());
              const Collection Q = construct_q_prime(net, k, h, J);
              REQUIRE(Q.size() == static_cast<std::size_t>(q));
              // Exactly one member inside H_k and H_k not covered.
              int inside = 0;
              for (const auto& Y : Q.subsets) {
                inside += Y.subset_of(net.relays_of_user(k)) ? 1 : 0;
              }
              CHECK(inside == 1);
              CHECK_FALSE(net.relays_of_user(k).subset_of(Q.relay_union()));
              // Users of h caching the symbol are exactly J \ {k}.
              UserSet hit;
              for (const auto& Y : Q.subsets) {
                hit = set_union(hit, net.common_users(Y));
              }
              CHECK(set_difference(net.users_of_relay(h), hit) == set_difference(J, UserSet{k}));
              CHECK(seen.insert(Q).second);
              return true;
            });
          }
          CHECK(BigInt(seen.size()) == r * oracle::choose(net.K_prime() - 1, g - 1));
        }
      }
    }
  }

  TEST_CASE("worked example 1 delivery")
  {
    const auto net = CombinationNetwork::build(5, 3);
    const auto L = asym_uncoded_placement(net, 10);
    const auto plan = build_delivery(net, L, distinct_demand(10, 10));
    std::size_t at_relay1 = 0;
    for (const auto& m : plan.messages) {
      if (m.relay == 1) {
        ++at_relay1;
        CHECK(m.targets == net.users_of_relay(1));
        CHECK(m.summands.size() == 6);
      }
    }
    CHECK(at_relay1 == 1);
    const auto rep = load_report(net, plan);
    for (const auto& x : rep.relay_loads) {
      CHECK(x == Rational(1, 10));
    }
    for (const auto& l : rep.link_loads) {
      CHECK(l.load == Rational(1, 10));
    }
    CHECK(rep.max_link_load == Rational(1, 10));
    REQUIRE(rep.measured_gain);
    CHECK(*rep.measured_gain == 6);
  }

  TEST_CASE("worked example 2 delivery")
  {
    const auto net = CombinationNetwork::build(4, 2);
    const auto L = asym_coded_placement(net, 6, 2);
    const auto plan = build_delivery(net, L, distinct_demand(6, 6));
    std::vector<UserSet> targets;
    for (const auto& m : plan.messages) {
      if (m.relay == 1) {
        targets.push_back(m.targets);
        CHECK(m.length == Rational(1, 5));
      }
    }
    CHECK(targets == std::vector<UserSet>{{1, 2}, {1, 3}, {2, 3}});
    const auto rep = load_report(net, plan);
    CHECK(rep.relay_loads == std::vector<Rational>(4, Rational(3, 5)));
    CHECK(rep.max_link_load == Rational(3, 5));
  }

  TEST_CASE("q = 1 layouts reach gain K'")
  {
    for (auto [H, r] : {std::pair{4, 2}, {5, 3}, {6, 2}, {6, 4}}) {
      const auto net = CombinationNetwork::build(H, r);
      const auto L = asym_uncoded_placement(net, net.K());
      const auto plan = build_delivery(net, L, distinct_demand(net.K(), net.K()));
      for (const auto& m : plan.messages) {
        CHECK(m.summands.size() == static_cast<std::size_t>(net.K_prime()));
      }
      CHECK(*load_report(net, plan).measured_gain == net.K_prime());
    }
  }

  TEST_CASE("every delivered symbol reaches its user exactly once")
  {
    const auto net = CombinationNetwork::build(5, 2);
    for (const Scheme s : {Scheme::AsymCoded, Scheme::Improved, Scheme::Man}) {
      const auto L = make_placement(net, s, 10, s == Scheme::Man ? 2 : 3);
      const auto plan = build_delivery(net, L, distinct_demand(10, 10));
      std::map<std::pair<UserId, std::size_t>, std::set<int>> parts;
      for (const auto& m : plan.messages) {
        for (const auto& t : m.summands) {
          CHECK(contains(m.targets, t.user));
          CHECK(net.relays_of_user(t.user).contains(m.relay));
          for (const auto& p : t.pieces) {
            CHECK(!contains(L.symbols[p.symbol].cached_by, t.user));
            CHECK(parts[{t.user, p.symbol}].insert(p.part).second);
          }
        }
      }
      if (s == Scheme::Man) {
        for (UserId k = 1; k <= net.K(); ++k) {
          for (std::size_t sym = 0; sym < L.symbols.size(); ++sym) {
            if (!contains(L.symbols[sym].cached_by, k)) {
              CHECK(parts[{k, sym}].size() == srds_best_relays(net, k, L.symbols[sym].cached_by).size());
            }
          }
        }
      }
    }
  }

  TEST_CASE("formula load in the agreement regime")
  {
    for (auto [H, r] : {std::pair{4, 2}, {5, 2}, {5, 3}, {6, 3}}) {
      const auto net = CombinationNetwork::build(H, r);
      for (int g = 2; g <= net.K_prime(); ++g) {
        if (g <= net.K_prime() - (H - r + 1) + 1) {
          continue;
        }
        const auto L = asym_coded_placement(net, net.K(), g);
        const auto plan = build_delivery(net, L, distinct_demand(net.K(), net.K()));
        CHECK(load_report(net, plan).max_link_load == formula_load(net, L));
        CHECK(plan.srds_divergences == 0);
      }
    }
  }

  TEST_CASE("full caching sends nothing")
  {
    const auto net = CombinationNetwork::build(4, 2);
    const auto L = man_placement(net, 3, 6);
    CHECK(L.M == 3);
    const auto plan = build_delivery(net, L, DemandVector{{1, 2, 3, 1, 2, 3}});
    CHECK(plan.messages.empty());
    const auto rep = load_report(net, plan);
    CHECK(rep.max_link_load == 0);
    CHECK_FALSE(rep.measured_gain);
  }

  TEST_CASE("worst case over demand sets")
  {
    const auto net = CombinationNetwork::build(4, 2);
    const auto L = asym_coded_placement(net, 6, 2);
    const auto distinct = worst_case_load(net, L, DistinctDemand{});
    CHECK(distinct.report.max_link_load == Rational(3, 5));
    const auto all = worst_case_load(net, L, AllDemands{}, Execution::Parallel);
    CHECK(all.evaluated == 46656);
    CHECK(all.report.max_link_load >= Rational(3, 5));
    const auto all_serial = worst_case_load(net, L, AllDemands{}, Execution::Serial);
    CHECK(all_serial.demand == all.demand);
    CHECK(all_serial.report.max_link_load == all.report.max_link_load);

    const auto constant = load_report(net, build_delivery(net, L, DemandVector{{1, 1, 1, 1, 1, 1}}));
    CHECK(constant.max_link_load <= all.report.max_link_load);

    const auto s1 = worst_case_load(net, L, SampledDemands{50, 9});
    const auto s2 = worst_case_load(net, L, SampledDemands{50, 9}, Execution::Serial);
    CHECK(s1.demand == s2.demand);
    CHECK(sample_demands(6, 6, 5, 1) == sample_demands(6, 6, 5, 1));

    const auto one_file = asym_coded_placement(net, 1, 2);
    const auto w = worst_case_load(net, one_file, AllDemands{});
    CHECK(w.evaluated == 1);
    CHECK(w.report.max_link_load ==
          load_report(net, build_delivery(net, one_file, DemandVector{{1, 1, 1, 1, 1, 1}})).max_link_load);

    CHECK_THROWS_AS(worst_case_load(net, asym_coded_placement(net, 5, 2), DistinctDemand{}), ParameterError);
    ::setenv("COMBICACHE_MAX_ENUM", "1000", 1);
    CHECK_THROWS_AS(worst_case_load(net, L, AllDemands{}), EnumerationCapError);
    ::unsetenv("COMBICACHE_MAX_ENUM");
  }

  TEST_CASE("inconsistent inputs")
  {
    const auto a = CombinationNetwork::build(4, 2);
    const auto b = CombinationNetwork::build(5, 3);
    const auto L = asym_coded_placement(a, 6, 2);
    CHECK_THROWS_AS(build_delivery(b, L, distinct_demand(10, 10)), ParameterError);
    CHECK_THROWS_AS(build_delivery(a, L, DemandVector{{1, 2, 3}}), ParameterError);
    CHECK_THROWS_AS(build_delivery(a, L, DemandVector{{1, 2, 3, 4, 5, 7}}), ParameterError);
  }
}
