#include <doctest.h>

#include "combicache/bounds.hpp"
#include "combicache/errors.hpp"
#include "oracles.hpp"

using namespace combicache;

namespace {

std::optional<TradeoffPoint> at_gain(const std::vector<TradeoffPoint>& pts, int g)
{
  for (const auto& p : pts) {
    if (!p.anchor && p.g == g) {
      return p;
    }
  }
  return std::nullopt;
}

std::vector<oracle::Pt> as_pts(const std::vector<TradeoffPoint>& pts)
{
  std::vector<oracle::Pt> out;
  for (const auto& p : pts) {
    out.push_back({p.M, p.R});
  }
  return out;
}

}  // namespace

TEST_SUITE("bounds")
{
  TEST_CASE("tradeoff points of the worked examples")
  {
    const auto e1 = at_gain(thm1_points(5, 3, 10), 6);
    REQUIRE(e1);
    CHECK(e1->M == 7);
    CHECK(e1->R == Rational(1, 10));
    const auto e2 = at_gain(thm1_points(4, 2, 6), 2);
    REQUIRE(e2);
    CHECK(e2->M == Rational(6, 5));
    CHECK(e2->R == Rational(3, 5));
    const auto f = at_gain(thm1_points(6, 2, 15), 5);
    REQUIRE(f);
    CHECK(f->M == 10);
    CHECK(f->R == Rational(1, 6));
    CHECK(thm1_points(5, 1, 4).empty());
    CHECK(thm1_points(4, 4, 4).empty());
  }

  TEST_CASE("anchors are flagged")
  {
    const auto pts = thm1_points(4, 2, 6);
    REQUIRE(pts.size() == 4);
    CHECK(pts.front().anchor);
    CHECK(pts.front().M == 0);
    CHECK(pts.front().R == Rational(3, 2));
    CHECK(pts.back().anchor);
    CHECK(pts.back().M == 6);
    CHECK(pts.back().R == 0);
  }

  TEST_CASE("improved points")
  {
    const auto t3 = at_gain(thm3_points(4, 2, 6), 2);
    CHECK(t3->M == Rational(6, 5));
    for (auto [H, r] : {std::pair{5, 3}, {6, 2}, {6, 3}, {7, 4}}) {
      const auto p1 = thm1_points(H, r, 20);
      const auto p3 = thm3_points(H, r, 20);
      const int Kp = static_cast<int>(oracle::choose(H - 1, r - 1));
      CHECK(at_gain(p1, Kp)->M == at_gain(p3, Kp)->M);
      for (int g = 2; g <= Kp; ++g) {
        CHECK(at_gain(p3, g)->M <= at_gain(p1, g)->M);
        const Rational K = oracle::choose(H, r);
        CHECK(at_gain(p3, g)->R == K / H * (1 - at_gain(p3, g)->M / 20) / g);
      }
    }
    const BigInt G = oracle::improved_cached_count(6, 2, 4, {1, 2});
    CHECK(at_gain(thm3_points(6, 2, 15), 2)->M == Rational(15) * Rational(G, G + 8));
  }

  TEST_CASE("cut-set and routing")
  {
    CHECK(cutset_bound(5, 3, 10, 10) == 0);
    CHECK(cutset_bound(5, 3, 10, 7) == Rational(1, 10));
    CHECK(cutset_bound(6, 2, 15, 10) == Rational(1, 6));
    CHECK(routing_load(6, 2, 15, 0) == Rational(5, 2));
    CHECK(routing_load(6, 2, 15, 15) == 0);
    CHECK(routing_load(6, 2, 15, 5) == Rational(5, 3));
    CHECK_THROWS_AS(cutset_bound(6, 2, 15, 16), ParameterError);
    for (int H = 3; H <= 7; ++H) {
      for (int r = 2; r < H; ++r) {
        for (const auto& p : thm1_points(H, r, 9)) {
          CHECK(p.R >= cutset_bound(H, r, 9, p.M));
        }
      }
    }
  }

  TEST_CASE("envelope")
  {
    const TradeoffPoint a{"x", std::nullopt, 2, 3, false};
    CHECK(lower_convex_envelope({a}, 5).points.size() == 1);
    const TradeoffPoint b{"x", std::nullopt, 3, 2, false};
    const TradeoffPoint c{"x", std::nullopt, 4, 1, false};
    const auto line = lower_convex_envelope({c, a, b}, 5);
    REQUIRE(line.points.size() == 2);
    CHECK(line.points.front().M == 2);
    CHECK(line.points.back().M == 4);
    CHECK_THROWS_AS(lower_convex_envelope({}, 5), ParameterError);
    CHECK_THROWS_AS(lower_convex_envelope({TradeoffPoint{"x", std::nullopt, 6, 0, false}}, 5), ParameterError);

    for (auto [H, r, N] : {std::tuple{6, 2, 15}, {5, 3, 10}, {6, 3, 7}, {7, 3, 35}}) {
      const auto p1 = thm1_points(H, r, N);
      const auto p3 = thm3_points(H, r, N);
      const auto e1 = lower_convex_envelope(p1, N);
      const auto e3 = lower_convex_envelope(p3, N);
      for (int i = 0; i <= 4 * N; ++i) {
        const Rational M(i, 4);
        CHECK(envelope_at(e1, M) == oracle::envelope_value(as_pts(p1), M));
        CHECK(envelope_at(e3, M) <= envelope_at(e1, M));
      }
    }
    const auto fig = lower_convex_envelope(thm1_points(6, 2, 15), 15);
    CHECK(envelope_at(fig, 10) == Rational(1, 6));
    for (int M = 10; M <= 15; ++M) {
      CHECK(envelope_at(fig, M) == cutset_bound(6, 2, 15, M));
    }
  }

  TEST_CASE("baseline curve")
  {
    const auto z = zewail_curve(4, 2, 6);
    REQUIRE(z.size() == 2);
    CHECK(z[0].M == 2);
    CHECK(z[0].R == Rational(1, 2));
    CHECK(z[1].M == 4);
    for (const auto& p : zewail_curve(6, 3, 6)) {
      CHECK(p.M < 6);
    }
  }

  TEST_CASE("memory comparison against the baseline")
  {
    for (auto [H, r] : {std::pair{4, 2}, {6, 2}}) {
      const auto rep = remark1_check(H, r);
      CHECK(rep.holds());
      for (const auto& row : rep.rows) {
        CHECK(row.claimed);
        CHECK(row.strictly_smaller);
      }
    }
    const auto r3 = remark1_check(7, 3);
    CHECK(r3.threshold == 15 - 3 + 1);
  }

  TEST_CASE("optimality at the q = 1 point")
  {
    for (auto [H, r, N] : {std::tuple{5, 3, 10}, {6, 2, 15}, {8, 5, 3}}) {
      const auto rep = thm2_optimality_check(H, r, N);
      CHECK(rep.ok());
    }
    const auto e1 = thm2_optimality_check(5, 3, 10);
    CHECK(e1.M_star == 7);
    CHECK(e1.R_star == Rational(1, 10));
    const auto deg = thm2_optimality_check(4, 4, 3);
    CHECK(deg.degenerate);
    CHECK(deg.ok());
  }

  TEST_CASE("reference constants")
  {
    CHECK(fixture_constant("example1_baseline").value == Rational(118, 1000));
    CHECK(fixture_constant("example2_baseline").value == Rational(9, 10));
    CHECK(fixture_constant("example2_enhanced_bound").value == Rational(3, 5));
    CHECK(fixture_constant("example2_uncoded_bound").value == Rational(157, 255));
    CHECK_THROWS(fixture_constant("nope"));
  }
}
