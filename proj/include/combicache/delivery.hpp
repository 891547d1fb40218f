#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "combicache/placement.hpp"
#include "combicache/rational.hpp"
#include "combicache/topology.hpp"

namespace combicache {

/// d[k-1] is the file (1-based) requested by user k.
struct DemandVector {
  std::vector<int> d;

  int of(UserId k) const { return d[static_cast<std::size_t>(k - 1)]; }
  bool operator==(const DemandVector&) const = default;
};

/// d = (1, 2, ..., K). Throws ParameterError when N < K.
DemandVector distinct_demand(int K, int N);
void validate_demand(const DemandVector& d, int K, int N);

/// One piece of a symbol: part `part` of `parts` equal slices.
struct PieceRef {
  std::size_t symbol = 0;
  int file = 0;
  int part = 0;
  int parts = 1;

  auto operator<=>(const PieceRef&) const = default;
};

/// Bits user `user` must get from `relay` that every user in `known_by`
/// already caches.
struct TSet {
  RelayId relay = 0;
  UserId user = 0;
  UserSet known_by;
  std::vector<PieceRef> pieces;
  Rational length;  // units of B
};

/// XOR of the T-sets of every user in `targets`, sent to `relay` and
/// forwarded to exactly `targets`. Shorter summands are zero-extended.
struct MulticastMessage {
  RelayId relay = 0;
  UserSet targets;
  std::vector<TSet> summands;  // ordered by user
  Rational length;             // max summand length, units of B
};

struct DeliveryPlan {
  int H = 0;
  int K = 0;
  int N = 0;
  Rational M;
  DemandVector demand;
  std::vector<MulticastMessage> messages;  // by relay, then lexicographic targets
  /// Asymmetric schemes only: T-set assignments where the SRDS argmax set
  /// differs from {h} (can only happen for small g).
  std::uint64_t srds_divergences = 0;
};

struct LinkLoad {
  RelayId relay = 0;
  UserId user = 0;
  Rational load;
};

struct LoadReport {
  std::vector<Rational> relay_loads;  // R_h, index h-1
  std::vector<LinkLoad> link_loads;   // R_{h->k} for every k in U_h
  Rational max_link_load;
  std::optional<Rational> measured_gain;  // unset when the max load is 0
};

/// argmax_{h in H_k} |U_h ∩ W|, the full tie set. Throws ParameterError if k ∈ W.
std::vector<RelayId> srds_best_relays(const CombinationNetwork& net, UserId k, const UserSet& W);

/// Q' = {H_k' \ {h} : k' ∈ U_h \ J} ∪ {H_k \ {h}}. Throws ParameterError
/// when h ∉ H_k, J ⊄ U_h or k ∉ J.
Collection construct_q_prime(const CombinationNetwork& net, UserId k, RelayId h, const UserSet& J);

DeliveryPlan build_delivery(const CombinationNetwork& net, const PlacementLayout& layout, const DemandVector& d);

LoadReport load_report(const CombinationNetwork& net, const DeliveryPlan& plan);

struct AllDemands {};
struct DistinctDemand {};
struct SampledDemands {
  std::uint64_t count = 1;
  std::uint64_t seed = 0;
};
using DemandPolicy = std::variant<AllDemands, DistinctDemand, SampledDemands>;

struct WorstCase {
  LoadReport report;
  DemandVector demand;  // first maximiser in evaluation order
  std::uint64_t evaluated = 0;
};

enum class Execution { Serial, Parallel };

/// Maximises the max-link load over the demand set. Exhaustive enumeration
/// throws EnumerationCapError above the enumeration cap.
WorstCase worst_case_load(const CombinationNetwork& net, const PlacementLayout& layout, const DemandPolicy& policy,
                          Execution exec = Execution::Parallel);

/// Deterministic demand vectors for SampledDemands (mt19937_64, value mod N).
std::vector<DemandVector> sample_demands(int K, int N, std::uint64_t count, std::uint64_t seed);

}  // namespace combicache
