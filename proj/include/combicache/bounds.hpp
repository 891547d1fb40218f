#pragma once

#include <optional>
#include <string>
#include <vector>

#include "combicache/rational.hpp"

namespace combicache {

struct TradeoffPoint {
  std::string scheme;
  std::optional<int> g;
  Rational M;
  Rational R;
  bool anchor = false;  // routing (0, K/H) or (N, 0), not a scheme point
};

struct TradeoffCurve {
  std::vector<TradeoffPoint> points;
  bool envelope = false;
};

/// Asymmetric coded placement, one point per g in [2, K'] plus both anchors.
/// Empty when K' < 2.
std::vector<TradeoffPoint> thm1_points(int H, int r, int N);
/// Same with the covering collections dropped from the placement.
std::vector<TradeoffPoint> thm3_points(int H, int r, int N);
/// MDS-per-relay baseline at its own minimum memory for each g; points with
/// M > N are dropped.
std::vector<TradeoffPoint> zewail_curve(int H, int r, int N);

Rational cutset_bound(int H, int r, int N, const Rational& M);
Rational routing_load(int H, int r, int N, const Rational& M);

/// Exact lower convex hull restricted to [0, N]; collinear interior points
/// are dropped. Throws ParameterError on empty input or M outside [0, N].
TradeoffCurve lower_convex_envelope(const std::vector<TradeoffPoint>& points, int N);
/// Piecewise-linear value of an envelope at M. Throws outside its M range.
Rational envelope_at(const TradeoffCurve& curve, const Rational& M);

struct Remark1Row {
  int g = 0;
  Rational proposed;  // memory / N
  Rational baseline;  // memory / N
  bool strictly_smaller = false;
  bool claimed = false;  // inside the regime where strictness is asserted
};

struct Remark1Report {
  int H = 0;
  int r = 0;
  int threshold = 0;  // smallest claimed g
  std::vector<Remark1Row> rows;

  /// Every claimed row is strictly smaller.
  bool holds() const;
};

Remark1Report remark1_check(int H, int r);

struct Thm2Report {
  int H = 0;
  int r = 0;
  int N = 0;
  bool degenerate = false;  // K' < 2: only the routing anchor exists
  Rational M_star;
  Rational R_star;
  std::optional<TradeoffPoint> q1_point;
  Rational bound_at_star;
  bool point_matches = false;
  bool meets_bound = false;
  bool linear_to_end = false;

  bool ok() const { return point_matches && meets_bound && linear_to_end; }
};

Thm2Report thm2_optimality_check(int H, int r, int N);

/// Reference values quoted for cited bounds and baselines; never computed.
struct FixtureConstant {
  std::string id;
  std::string description;
  Rational value;
  std::string display;
};

const std::vector<FixtureConstant>& fixture_constants();
const FixtureConstant& fixture_constant(const std::string& id);

}  // namespace combicache
