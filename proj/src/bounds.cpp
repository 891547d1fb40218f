#include "combicache/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "combicache/combinatorics.hpp"
#include "combicache/errors.hpp"

namespace combicache {

namespace {

struct Params {
  BigInt K;
  BigInt Kp;
  BigInt Kpp;
};

Params params(int H, int r, int N)
{
  if (r < 1 || r > H || N < 1) {
    throw ParameterError("need 1 <= r <= H and N >= 1");
  }
  return {binom(H, r), binom(H - 1, r - 1), binom(H, r - 1)};
}

Rational load_at_gain(const Params& p, int H, int N, const Rational& M, int g)
{
  return Rational(p.K, H) * (Rational(1) - M / N) / g;
}

void add_anchors(std::vector<TradeoffPoint>& pts, const std::string& scheme, const Params& p, int H, int N)
{
  pts.insert(pts.begin(), TradeoffPoint{scheme, std::nullopt, Rational(0), Rational(p.K, H), true});
  pts.push_back(TradeoffPoint{scheme, std::nullopt, Rational(N), Rational(0), true});
}

template <class CachedCount>
std::vector<TradeoffPoint> coded_points(int H, int r, int N, const std::string& scheme, CachedCount cached)
{
  const Params p = params(H, r, N);
  const int Kp = p.Kp.convert_to<int>();
  std::vector<TradeoffPoint> pts;
  if (Kp < 2) {
    return pts;
  }
  for (int g = 2; g <= Kp; ++g) {
    const int q = Kp - g + 1;
    const BigInt c = cached(p, q);
    const BigInt d = r * binom(Kp - 1, q - 1);
    const Rational M = Rational(N) * Rational(c, c + d);
    pts.push_back(TradeoffPoint{scheme, g, M, load_at_gain(p, H, N, M, g), false});
  }
  add_anchors(pts, scheme, p, H, N);
  return pts;
}

// (b - a) x (c - a) in the (M, R) plane.
Rational cross(const TradeoffPoint& a, const TradeoffPoint& b, const TradeoffPoint& c)
{
  return (b.M - a.M) * (c.R - a.R) - (b.R - a.R) * (c.M - a.M);
}

}  // namespace

std::vector<TradeoffPoint> thm1_points(int H, int r, int N)
{
  return coded_points(H, r, N, "thm1", [r, H](const Params& p, int q) {
    (void)H;
    return binom(p.Kpp.convert_to<long long>() - r, q);
  });
}

std::vector<TradeoffPoint> thm3_points(int H, int r, int N)
{
  return coded_points(H, r, N, "thm3", [r, H](const Params&, int q) { return lemma1_G(H, r, q); });
}

std::vector<TradeoffPoint> zewail_curve(int H, int r, int N)
{
  const Params p = params(H, r, N);
  const int Kp = p.Kp.convert_to<int>();
  std::vector<TradeoffPoint> pts;
  for (int g = 2; g <= Kp; ++g) {
    const Rational M(BigInt(static_cast<long long>(H) * (g - 1) * N), r * p.K);
    if (M > N) {
      continue;
    }
    pts.push_back(TradeoffPoint{"zewail", g, M, load_at_gain(p, H, N, M, g), false});
  }
  return pts;
}

Rational cutset_bound(int H, int r, int N, const Rational& M)
{
  params(H, r, N);
  if (M < 0 || M > N) {
    throw ParameterError("memory outside [0, N]");
  }
  return (Rational(1) - M / N) / r;
}

Rational routing_load(int H, int r, int N, const Rational& M)
{
  const Params p = params(H, r, N);
  if (M < 0 || M > N) {
    throw ParameterError("memory outside [0, N]");
  }
  return Rational(p.K, H) * (Rational(1) - M / N);
}

TradeoffCurve lower_convex_envelope(const std::vector<TradeoffPoint>& points, int N)
{
  if (points.empty()) {
    throw ParameterError("envelope of an empty point set");
  }
  std::vector<TradeoffPoint> pts = points;
  for (const auto& p : pts) {
    if (p.M < 0 || p.M > N) {
      throw ParameterError("point memory outside [0, N]");
    }
  }
  std::sort(pts.begin(), pts.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
    return a.M != b.M ? a.M < b.M : a.R < b.R;
  });
  // Keep the lowest R for each M.
  pts.erase(std::unique(pts.begin(), pts.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
              return a.M == b.M;
            }),
            pts.end());

  TradeoffCurve hull;
  hull.envelope = true;
  for (const auto& p : pts) {
    while (hull.points.size() >= 2 &&
           cross(hull.points[hull.points.size() - 2], hull.points.back(), p) <= 0) {
      hull.points.pop_back();
    }
    hull.points.push_back(p);
  }
  return hull;
}

Rational envelope_at(const TradeoffCurve& curve, const Rational& M)
{
  const auto& v = curve.points;
  if (v.empty() || M < v.front().M || M > v.back().M) {
    throw ParameterError("memory outside the envelope's range");
  }
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (M <= v[i + 1].M) {
      return v[i].R + (v[i + 1].R - v[i].R) * (M - v[i].M) / (v[i + 1].M - v[i].M);
    }
  }
  return v.back().R;
}

bool Remark1Report::holds() const
{
  return std::all_of(rows.begin(), rows.end(), [](const Remark1Row& row) { return !row.claimed || row.strictly_smaller; });
}

Remark1Report remark1_check(int H, int r)
{
  Remark1Report rep;
  rep.H = H;
  rep.r = r;
  const Params p = params(H, r, 1);
  const int Kp = p.Kp.convert_to<int>();
  rep.threshold = r == 2 ? 2 : (r >= 3 ? Kp - H / (r - 1) + 1 : Kp + 1);
  const auto proposed = thm1_points(H, r, 1);
  for (const auto& pt : proposed) {
    if (pt.anchor) {
      continue;
    }
    Remark1Row row;
    row.g = *pt.g;
    row.proposed = pt.M;
    row.baseline = Rational(BigInt(static_cast<long long>(H) * (row.g - 1)), r * p.K);
    row.strictly_smaller = row.proposed < row.baseline;
    row.claimed = row.g >= rep.threshold;
    rep.rows.push_back(row);
  }
  return rep;
}

Thm2Report thm2_optimality_check(int H, int r, int N)
{
  Thm2Report rep;
  rep.H = H;
  rep.r = r;
  rep.N = N;
  const Params p = params(H, r, N);
  rep.M_star = Rational((p.K - H + r - 1) * N, p.K);
  rep.R_star = Rational(BigInt(H - r + 1), r * p.K);
  rep.bound_at_star = cutset_bound(H, r, N, rep.M_star);

  const auto pts = thm1_points(H, r, N);
  if (pts.empty()) {
    // Single-user or single-relay networks: routing at M_star is already tight.
    rep.degenerate = true;
    const Rational routed = routing_load(H, r, N, rep.M_star);
    rep.point_matches = rep.M_star >= 0 && rep.M_star <= N;
    rep.meets_bound = routed == rep.bound_at_star && routed == rep.R_star;
    rep.linear_to_end = rep.point_matches;
    return rep;
  }

  for (const auto& pt : pts) {
    if (!pt.anchor && *pt.g == p.Kp) {
      rep.q1_point = pt;
    }
  }
  rep.point_matches = rep.q1_point && rep.q1_point->M == rep.M_star && rep.q1_point->R == rep.R_star;
  rep.meets_bound = rep.q1_point && rep.q1_point->R == rep.bound_at_star;

  const TradeoffCurve env = lower_convex_envelope(pts, N);
  bool linear = envelope_at(env, rep.M_star) == rep.R_star;
  for (const auto& v : env.points) {
    if (v.M >= rep.M_star && v.R != cutset_bound(H, r, N, v.M)) {
      linear = false;
    }
  }
  rep.linear_to_end = linear;
  return rep;
}

const std::vector<FixtureConstant>& fixture_constants()
{
  static const std::vector<FixtureConstant> table = {
      {"example1_baseline", "MDS-per-relay baseline load, H=5 r=3 N=10 M=7", Rational(118, 1000), "0.118"},
      {"example2_baseline", "MDS-per-relay baseline load, H=4 r=2 N=6 M=6/5", Rational(9, 10), "9/10"},
      {"example2_enhanced_bound", "enhanced cut-set outer bound, H=4 r=2 N=6 M=6/5", Rational(3, 5), "3/5"},
      {"example2_uncoded_bound", "uncoded-placement outer bound, H=4 r=2 N=6 M=6/5", Rational(157, 255), "157/255"},
  };
  return table;
}

const FixtureConstant& fixture_constant(const std::string& id)
{
  for (const auto& c : fixture_constants()) {
    if (c.id == id) {
      return c;
    }
  }
  throw std::out_of_range("unknown fixture constant " + id);
}

}  // namespace combicache
