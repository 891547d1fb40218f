#include "combicache/delivery.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

#include "combicache/errors.hpp"
#include "combicache/subsets.hpp"

namespace combicache {

DemandVector distinct_demand(int K, int N)
{
  if (N < K) {
    throw ParameterError("distinct demands need N >= K (N=" + std::to_string(N) + ", K=" + std::to_string(K) + ")");
  }
  DemandVector d;
  d.d.resize(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    d.d[static_cast<std::size_t>(k)] = k + 1;
  }
  return d;
}

void validate_demand(const DemandVector& d, int K, int N)
{
  if (d.d.size() != static_cast<std::size_t>(K)) {
    throw ParameterError("demand vector has " + std::to_string(d.d.size()) + " entries, expected K=" +
                         std::to_string(K));
  }
  for (int f : d.d) {
    if (f < 1 || f > N) {
      throw ParameterError("demanded file " + std::to_string(f) + " outside [1, N]");
    }
  }
}

std::vector<RelayId> srds_best_relays(const CombinationNetwork& net, UserId k, const UserSet& W)
{
  if (contains(W, k)) {
    throw ParameterError("SRDS: user " + std::to_string(k) + " already caches the subfile");
  }
  std::vector<RelayId> best;
  std::size_t best_count = 0;
  for (RelayId h : net.relays_of_user(k).members()) {
    const std::size_t c = set_intersection(net.users_of_relay(h), W).size();
    if (best.empty() || c > best_count) {
      best = {h};
      best_count = c;
    } else if (c == best_count) {
      best.push_back(h);
    }
  }
  return best;
}

Collection construct_q_prime(const CombinationNetwork& net, UserId k, RelayId h, const UserSet& J)
{
  const RelaySet hk = net.relays_of_user(k);
  if (!hk.contains(h)) {
    throw ParameterError("relay " + std::to_string(h) + " is not connected to user " + std::to_string(k));
  }
  const UserSet& uh = net.users_of_relay(h);
  if (!std::is_sorted(J.begin(), J.end()) || std::adjacent_find(J.begin(), J.end()) != J.end() ||
      !std::includes(uh.begin(), uh.end(), J.begin(), J.end())) {
    throw ParameterError("J must be a sorted subset of the users of relay " + std::to_string(h));
  }
  if (!contains(J, k)) {
    throw ParameterError("J must contain user " + std::to_string(k));
  }
  std::vector<RelaySet> members;
  for (UserId other : set_difference(uh, J)) {
    members.push_back(net.relays_of_user(other).without(h));
  }
  members.push_back(hk.without(h));
  return Collection::canonical(std::move(members), net.r() - 1);
}

namespace {

// (relay, J, user) orders T-sets by relay, then lexicographic J, then user.
using TSetKey = std::tuple<RelayId, UserSet, UserId>;

void add_piece(std::map<TSetKey, TSet>& tsets, RelayId h, UserId k, UserSet known_by, PieceRef piece,
               const Rational& piece_len)
{
  UserSet J = set_union(known_by, UserSet{k});
  auto [it, inserted] = tsets.try_emplace(TSetKey{h, std::move(J), k});
  TSet& t = it->second;
  if (inserted) {
    t.relay = h;
    t.user = k;
    t.known_by = std::move(known_by);
  }
  t.length += piece_len / piece.parts;
  t.pieces.push_back(piece);
}

void check_layout(const CombinationNetwork& net, const PlacementLayout& layout)
{
  for (const auto& s : layout.symbols) {
    if (!s.cached_by.empty() && s.cached_by.back() > net.K()) {
      throw ParameterError("layout refers to users outside this network");
    }
    if (const auto* Q = std::get_if<Collection>(&s.key)) {
      for (const auto& y : Q->subsets) {
        if (y.size() != net.r() - 1 || !y.subset_of(net.all_relays())) {
          throw ParameterError("layout collections do not match this network");
        }
      }
    }
  }
  if (layout.scheme != Scheme::Man) {
    if (!layout.g || !layout.q || *layout.q != net.K_prime() - *layout.g + 1) {
      throw ParameterError("layout gain does not match this network");
    }
  }
}

void fill_srds(const CombinationNetwork& net, const PlacementLayout& layout, const DemandVector& d,
               std::map<TSetKey, TSet>& tsets)
{
  for (UserId k = 1; k <= net.K(); ++k) {
    for (std::size_t s = 0; s < layout.symbols.size(); ++s) {
      const UserSet& W = layout.symbols[s].cached_by;
      if (contains(W, k)) {
        continue;
      }
      const auto best = srds_best_relays(net, k, W);
      const int parts = static_cast<int>(best.size());
      for (int p = 0; p < parts; ++p) {
        const RelayId h = best[static_cast<std::size_t>(p)];
        add_piece(tsets, h, k, set_intersection(W, net.users_of_relay(h)), PieceRef{s, d.of(k), p, parts},
                  layout.piece_len);
      }
    }
  }
}

std::uint64_t fill_asymmetric(const CombinationNetwork& net, const PlacementLayout& layout, const DemandVector& d,
                              std::map<TSetKey, TSet>& tsets)
{
  const int g = *layout.g;
  std::uint64_t divergences = 0;
  for (UserId k = 1; k <= net.K(); ++k) {
    for (RelayId h : net.relays_of_user(k).members()) {
      const UserSet others = set_difference(net.users_of_relay(h), UserSet{k});
      for_each_combination(static_cast<int>(others.size()), g - 1, [&](std::span<const int> c) {
        UserSet J{k};
        for (int i : c) {
          J.push_back(others[static_cast<std::size_t>(i)]);
        }
        std::sort(J.begin(), J.end());
        const Collection Q = construct_q_prime(net, k, h, J);
        const auto idx = layout.find(Q);
        if (!idx) {
          throw ParameterError("layout has no symbol for collection " + key_label(Q));
        }
        const UserSet& cached_by = layout.symbols[*idx].cached_by;
        UserSet known_by = set_difference(J, UserSet{k});
        if (set_intersection(cached_by, net.users_of_relay(h)) != known_by) {
          throw std::logic_error("collection " + key_label(Q) + " is not known by exactly J \\ {k}");
        }
        if (srds_best_relays(net, k, cached_by) != std::vector<RelayId>{h}) {
          ++divergences;
        }
        add_piece(tsets, h, k, std::move(known_by), PieceRef{*idx, d.of(k), 0, 1}, layout.piece_len);
        return true;
      });
    }
  }
  return divergences;
}

}  // namespace

DeliveryPlan build_delivery(const CombinationNetwork& net, const PlacementLayout& layout, const DemandVector& d)
{
  validate_demand(d, net.K(), layout.N);
  check_layout(net, layout);

  DeliveryPlan plan;
  plan.H = net.H();
  plan.K = net.K();
  plan.N = layout.N;
  plan.M = layout.M;
  plan.demand = d;

  std::map<TSetKey, TSet> tsets;
  if (layout.scheme == Scheme::Man) {
    fill_srds(net, layout, d, tsets);
  } else {
    plan.srds_divergences = fill_asymmetric(net, layout, d, tsets);
  }

  for (auto it = tsets.begin(); it != tsets.end();) {
    const auto& [h, J, user] = it->first;
    MulticastMessage msg;
    msg.relay = h;
    msg.targets = J;
    for (; it != tsets.end() && std::get<0>(it->first) == msg.relay && std::get<1>(it->first) == msg.targets; ++it) {
      TSet& t = it->second;
      std::sort(t.pieces.begin(), t.pieces.end());
      if (t.length > msg.length) {
        msg.length = t.length;
      }
      msg.summands.push_back(std::move(t));
    }
    plan.messages.push_back(std::move(msg));
  }
  return plan;
}

LoadReport load_report(const CombinationNetwork& net, const DeliveryPlan& plan)
{
  LoadReport rep;
  rep.relay_loads.assign(static_cast<std::size_t>(net.H()), Rational(0));
  std::map<std::pair<RelayId, UserId>, Rational> link;
  for (RelayId h = 1; h <= net.H(); ++h) {
    for (UserId k : net.users_of_relay(h)) {
      link[{h, k}] = 0;
    }
  }
  for (const auto& m : plan.messages) {
    rep.relay_loads[static_cast<std::size_t>(m.relay - 1)] += m.length;
    for (UserId k : m.targets) {
      link[{m.relay, k}] += m.length;
    }
  }
  rep.max_link_load = 0;
  for (const auto& r : rep.relay_loads) {
    rep.max_link_load = std::max(rep.max_link_load, r);
  }
  for (const auto& [key, load] : link) {
    rep.link_loads.push_back(LinkLoad{key.first, key.second, load});
    rep.max_link_load = std::max(rep.max_link_load, load);
  }
  if (rep.max_link_load > 0) {
    const Rational routing = Rational(plan.K, plan.H) * (Rational(1) - plan.M / plan.N);
    rep.measured_gain = routing / rep.max_link_load;
  }
  return rep;
}

std::vector<DemandVector> sample_demands(int K, int N, std::uint64_t count, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::vector<DemandVector> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    DemandVector d;
    d.d.resize(static_cast<std::size_t>(K));
    for (auto& f : d.d) {
      f = static_cast<int>(rng() % static_cast<std::uint64_t>(N)) + 1;
    }
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

DemandVector demand_from_index(std::uint64_t idx, int K, int N)
{
  DemandVector d;
  d.d.assign(static_cast<std::size_t>(K), 1);
  for (int k = K - 1; k >= 0; --k) {
    d.d[static_cast<std::size_t>(k)] = static_cast<int>(idx % static_cast<std::uint64_t>(N)) + 1;
    idx /= static_cast<std::uint64_t>(N);
  }
  return d;
}

}  // namespace

WorstCase worst_case_load(const CombinationNetwork& net, const PlacementLayout& layout, const DemandPolicy& policy,
                          Execution exec)
{
  const int K = net.K();
  const int N = layout.N;

  std::vector<DemandVector> listed;
  std::uint64_t total = 0;
  bool exhaustive = false;
  if (std::holds_alternative<DistinctDemand>(policy)) {
    listed.push_back(distinct_demand(K, N));
    total = 1;
  } else if (const auto* s = std::get_if<SampledDemands>(&policy)) {
    listed = sample_demands(K, N, s->count, s->seed);
    total = listed.size();
  } else {
    const BigInt count = boost::multiprecision::pow(BigInt(N), static_cast<unsigned>(K));
    const std::uint64_t cap = enumeration_cap();
    if (count > cap) {
      throw EnumerationCapError("N^K = " + count.str() + " demand vectors exceed enumeration cap " +
                                std::to_string(cap));
    }
    total = count.convert_to<std::uint64_t>();
    exhaustive = true;
  }
  if (total == 0) {
    throw ParameterError("empty demand set");
  }

  auto demand_at = [&](std::uint64_t i) { return exhaustive ? demand_from_index(i, K, N) : listed[i]; };

  Rational best_load = -1;
  std::uint64_t best_index = 0;
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(total);
  const bool parallel = exec == Execution::Parallel;

#pragma omp parallel if (parallel)
  {
    Rational local_load = -1;
    std::uint64_t local_index = 0;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        const auto u = static_cast<std::uint64_t>(i);
        const Rational load = load_report(net, build_delivery(net, layout, demand_at(u))).max_link_load;
        if (load > local_load || (load == local_load && u < local_index)) {
          local_load = load;
          local_index = u;
        }
      } catch (...) {
#pragma omp critical(combicache_worst_case_error)
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
#pragma omp critical(combicache_worst_case_merge)
    if (local_load > best_load || (local_load == best_load && local_index < best_index)) {
      best_load = local_load;
      best_index = local_index;
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  WorstCase out;
  out.demand = demand_at(best_index);
  out.report = load_report(net, build_delivery(net, layout, out.demand));
  out.evaluated = total;
  return out;
}

}  // namespace combicache
