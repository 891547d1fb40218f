#include "combicache/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "combicache/bounds.hpp"
#include "combicache/combinatorics.hpp"
#include "combicache/delivery.hpp"
#include "combicache/errors.hpp"
#include "combicache/placement.hpp"
#include "combicache/verify.hpp"

namespace combicache {

namespace {

std::string join(const std::vector<int>& v)
{
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << (i ? "," : "") << v[i];
  }
  return os.str() + '}';
}

FixtureResult rational_fixture(const std::string& group, const std::string& id, const Rational& expected,
                               const Rational& actual)
{
  return {group, id, to_fraction_string(expected), to_fraction_string(actual), expected == actual};
}

FixtureResult flag_fixture(const std::string& group, const std::string& id, bool ok, const std::string& detail)
{
  return {group, id, "true", ok ? "true" : "false (" + detail + ")", ok};
}

struct Scenario {
  CombinationNetwork net;
  PlacementLayout layout;
  SimulationRun run;
};

Scenario simulate_example(int H, int r, int N, Scheme scheme, int g, std::uint64_t multiple)
{
  Scenario s{CombinationNetwork::build(H, r), {}, {}};
  s.layout = make_placement(s.net, scheme, N, g);
  const std::uint64_t B = required_block_size(s.layout, s.net) * multiple;
  s.run = simulate(s.net, s.layout, distinct_demand(s.net.K(), N), B, 1);
  return s;
}

void example1(std::vector<FixtureResult>& out)
{
  const std::string grp = "example1";
  const Scenario s = simulate_example(5, 3, 10, Scheme::AsymUncoded, 6, 1000);
  out.push_back(rational_fixture(grp, "memory", 7, s.layout.M));
  out.push_back(rational_fixture(grp, "max_link_load", Rational(1, 10), s.run.report.max_link_load));
  out.push_back(flag_fixture(grp, "all_users_recover", s.run.all_recovered(), "reconstruction failed"));
  out.push_back(flag_fixture(grp, "link_bytes_match_load", s.run.accounting_exact(), "byte count mismatch"));
  out.push_back({grp, "relay1_users", "{1,2,3,4,5,6}", join(s.net.users_of_relay(1)),
                 s.net.users_of_relay(1) == UserSet{1, 2, 3, 4, 5, 6}});
  const auto best = srds_best_relays(s.net, 1, UserSet{4, 5, 6, 7, 8, 9, 10});
  out.push_back({grp, "srds_user1", "{3}", join(best), best == std::vector<RelayId>{3}});
  out.push_back(rational_fixture(grp, "cutset_at_M7", Rational(1, 10), cutset_bound(5, 3, 10, 7)));
  const auto& base = fixture_constant("example1_baseline");
  out.push_back({grp, "below_baseline", "< " + base.display, to_fraction_string(s.run.report.max_link_load),
                 s.run.report.max_link_load < base.value});
}

void example2(std::vector<FixtureResult>& out)
{
  const std::string grp = "example2";
  const Scenario s = simulate_example(4, 2, 6, Scheme::AsymCoded, 2, 10);
  const auto& net = s.net;
  out.push_back(rational_fixture(grp, "memory", Rational(6, 5), s.layout.M));
  out.push_back(rational_fixture(grp, "max_link_load", Rational(3, 5), s.run.report.max_link_load));
  out.push_back(flag_fixture(grp, "all_users_recover", s.run.all_recovered(), "reconstruction failed"));
  out.push_back({grp, "common_users_relay2", "{1,4,5}", join(net.common_users(RelaySet::from_members({2}))),
                 net.common_users(RelaySet::from_members({2})) == UserSet{1, 4, 5}});
  const auto best = srds_best_relays(net, 1, UserSet{2});
  out.push_back({grp, "srds_user1", "{1}", join(best), best == std::vector<RelayId>{1}});

  const Collection Q = construct_q_prime(net, 1, 1, UserSet{1, 2});
  const std::string want_q = key_label(Collection::canonical(
      {RelaySet::from_members({2}), RelaySet::from_members({4})}, 1));
  out.push_back({grp, "q_prime_user1_relay1", want_q, key_label(Q), key_label(Q) == want_q});

  const DeliveryPlan plan = build_delivery(net, s.layout, distinct_demand(6, 6));
  std::vector<std::string> relay1;
  bool shape = true;
  for (const auto& m : plan.messages) {
    if (m.relay != 1) {
      continue;
    }
    std::string label;
    for (const auto& t : m.summands) {
      const auto& sym = s.layout.symbols[t.pieces.front().symbol];
      label += (label.empty() ? "" : "+") + std::string("f") + std::to_string(t.user) + "," + join(sym.cached_by);
      shape = shape && t.pieces.size() == 1 && sym.cached_by == t.known_by;
    }
    relay1.push_back(label);
  }
  const std::vector<std::string> want = {"f1,{2}+f2,{1}", "f1,{3}+f3,{1}", "f2,{3}+f3,{2}"};
  std::string got;
  for (const auto& l : relay1) {
    got += (got.empty() ? "" : " ") + l;
  }
  out.push_back({grp, "relay1_messages", "f1,{2}+f2,{1} f1,{3}+f3,{1} f2,{3}+f3,{2}", got, shape && relay1 == want});

  const Rational load = s.run.report.max_link_load;
  const auto& base = fixture_constant("example2_baseline");
  const auto& enhanced = fixture_constant("example2_enhanced_bound");
  const auto& uncoded = fixture_constant("example2_uncoded_bound");
  out.push_back({grp, "below_baseline", "< " + base.display, to_fraction_string(load), load < base.value});
  out.push_back({grp, "meets_enhanced_bound", "= " + enhanced.display, to_fraction_string(load), load == enhanced.value});
  out.push_back({grp, "beats_uncoded_bound", "< " + uncoded.display, to_fraction_string(load), load < uncoded.value});
}

void thm2(std::vector<FixtureResult>& out)
{
  for (auto [H, r, N] : {std::tuple{5, 3, 10}, std::tuple{6, 2, 15}, std::tuple{4, 2, 6}}) {
    const Thm2Report rep = thm2_optimality_check(H, r, N);
    const std::string id = "H" + std::to_string(H) + "_r" + std::to_string(r) + "_N" + std::to_string(N);
    out.push_back({"thm2", id, "(" + to_fraction_string(rep.M_star) + ", " + to_fraction_string(rep.R_star) + ") optimal",
                   rep.q1_point ? "(" + to_fraction_string(rep.q1_point->M) + ", " +
                                      to_fraction_string(rep.q1_point->R) + ")" +
                                      (rep.ok() ? " optimal" : " not optimal")
                                : "none",
                   rep.ok()});
  }
}

void fig2(std::vector<FixtureResult>& out)
{
  const auto pts = thm1_points(6, 2, 15);
  const TradeoffCurve env = lower_convex_envelope(pts, 15);
  out.push_back(rational_fixture("fig2", "envelope_at_M10", Rational(1, 6), envelope_at(env, 10)));
  bool on_bound = true;
  for (int M = 10; M <= 15; ++M) {
    on_bound = on_bound && envelope_at(env, M) == cutset_bound(6, 2, 15, M);
  }
  out.push_back(flag_fixture("fig2", "meets_cutset_on_10_15", on_bound, "envelope above bound"));
  out.push_back(rational_fixture("fig2", "routing_at_M5", Rational(5, 3), routing_load(6, 2, 15, 5)));
}

void remark1(std::vector<FixtureResult>& out)
{
  for (auto [H, r] : {std::pair{4, 2}, std::pair{6, 2}, std::pair{5, 3}}) {
    const Remark1Report rep = remark1_check(H, r);
    std::string detail;
    for (const auto& row : rep.rows) {
      if (row.claimed && !row.strictly_smaller) {
        detail += "g=" + std::to_string(row.g) + " ";
      }
    }
    out.push_back({"remark1", "H" + std::to_string(H) + "_r" + std::to_string(r), "strictly smaller for claimed g",
                   detail.empty() ? "strictly smaller for claimed g" : "not strict at " + detail, rep.holds()});
  }
}

void lemma1(std::vector<FixtureResult>& out)
{
  for (auto [H, r, q] : {std::tuple{4, 2, 2}, std::tuple{5, 3, 3}, std::tuple{6, 2, 4}, std::tuple{5, 2, 2}}) {
    const auto net = CombinationNetwork::build(H, r);
    const BigInt G = lemma1_G(H, r, q);
    const std::uint64_t oracle = lemma1_G_bruteforce(net, q, 1);
    out.push_back({"lemma1", "H" + std::to_string(H) + "_r" + std::to_string(r) + "_q" + std::to_string(q),
                   std::to_string(oracle), G.str(), G == oracle});
  }
}

using GroupFn = std::function<void(std::vector<FixtureResult>&)>;

const std::vector<std::pair<std::string, GroupFn>>& groups()
{
  static const std::vector<std::pair<std::string, GroupFn>> table = {
      {"example1", example1}, {"example2", example2}, {"thm2", thm2},
      {"fig2", fig2},         {"remark1", remark1},   {"lemma1", lemma1},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& fixture_groups()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : groups()) {
      v.push_back(name);
    }
    return v;
  }();
  return names;
}

std::vector<FixtureResult> run_fixtures(const std::string& only)
{
  std::vector<FixtureResult> out;
  bool found = only.empty();
  for (const auto& [name, fn] : groups()) {
    if (only.empty() || only == name) {
      found = true;
      fn(out);
    }
  }
  if (!found) {
    throw ParameterError("unknown fixture group '" + only + "'");
  }
  return out;
}

}  // namespace combicache
