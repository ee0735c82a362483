#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "activesep/geometry.hpp"
#include "activesep/oracles.hpp"
#include "support.hpp"

using namespace activesep;
using doctest::Approx;

namespace {

const std::vector<LabeledPoint> kAnchors{{2, 2, -1}, {2, 10, 1}, {18, 16, 1}, {18, 4, -1}};

ParamPolygon strip() {
  // rho in [-1, 1], -1 <= c <= 1
  const std::vector<LabeledPoint> pts{{0, 1, 1}, {0, -1, -1}};
  return feasible_polygon(pts, {-std::numbers::pi / 4, std::numbers::pi / 4, -5, 5});
}

}  // namespace

TEST_CASE("is_separable on small fixtures") {
  CHECK(is_separable(std::vector<LabeledPoint>{{0, 0, -1}, {0, 1, 1}}));
  CHECK_FALSE(is_separable(std::vector<LabeledPoint>{{0, 0, 1}, {1, 1, 1}, {0, 1, -1}, {1, 0, -1}}));
  CHECK(is_separable(kAnchors));
  CHECK(is_separable(std::vector<LabeledPoint>{}));
  CHECK(is_separable(std::vector<LabeledPoint>{{1, 1, 1}, {2, 5, 1}}));
  // Same position, opposite labels.
  CHECK_FALSE(is_separable(std::vector<LabeledPoint>{{1, 1, 1}, {1, 1, -1}}));
  // A -1 straight above a +1 can only be split by a vertical line.
  CHECK_FALSE(is_separable(std::vector<LabeledPoint>{{0, 0, 1}, {0, 3, -1}}));
  CHECK_THROWS_AS(is_separable(std::vector<LabeledPoint>{{0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("feasible_polygon: strip and empty data") {
  const std::vector<LabeledPoint> pts{{0, 1, 1}, {0, -1, -1}};
  const ParamBox box{-0.8, 0.8, -5, 5};
  const ParamPolygon poly = feasible_polygon(pts, box);
  CHECK(intercept_interval(poly).lo == Approx(-1));
  CHECK(intercept_interval(poly).hi == Approx(1));
  CHECK(slope_set(poly).hull().lo == Approx(-0.8));
  CHECK(slope_set(poly).hull().hi == Approx(0.8));

  const ParamPolygon full = feasible_polygon(std::vector<LabeledPoint>{}, box);
  const ParamPolygon image = box_polygon(box);
  REQUIRE(full.size() == 4);
  CHECK(full.area() == Approx(image.area()));
  CHECK(full.area() == Approx(2 * std::tan(0.8) * 10));

  CHECK(feasible_polygon(std::vector<LabeledPoint>{{0, 0, 1}, {1, 1, 1}, {0, 1, -1}, {1, 0, -1}}, box).empty());
}

TEST_CASE("slope_set and intercept_interval") {
  CHECK(slope_set(ParamPolygon{}).empty());
  CHECK(intercept_interval(ParamPolygon{}).empty());
  const ParamPolygon square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  CHECK(slope_set(square).hull().lo == Approx(0));
  CHECK(slope_set(square).hull().hi == Approx(std::numbers::pi / 4));
  CHECK(intercept_interval(strip()).lo == Approx(-1));
  CHECK(intercept_interval(strip()).hi == Approx(1));
}

TEST_CASE("anchor polygon projections match the grid oracle") {
  const ParamBox box{-1.2, 1.2, -10, 10};
  const ParamPolygon poly = feasible_polygon(kAnchors, box);
  oracles::GridSpec grid;
  const auto g = oracles::grid_projection(kAnchors, grid);
  REQUIRE_FALSE(g.empty);
  const Interval th = slope_set(poly).hull();
  const Interval ci = intercept_interval(poly);
  CHECK(std::abs(th.lo - g.theta_lo) <= grid.dtheta + 1e-9);
  CHECK(std::abs(th.hi - g.theta_hi) <= grid.dtheta + 1e-9);
  CHECK(std::abs(ci.lo - g.c_lo) <= grid.dc + 1e-9);
  CHECK(std::abs(ci.hi - g.c_hi) <= grid.dc + 1e-9);
}

TEST_CASE("certainty_label on the strip") {
  const ParamPolygon s = strip();
  CHECK(certainty_label(s, {0, 2}) == 1);
  CHECK(certainty_label(s, {0, 0}) == 0);
  CHECK(certainty_label(s, {0, -3}) == -1);
  CHECK_THROWS_AS(certainty_label(ParamPolygon{}, {0, 0}), std::invalid_argument);
}

TEST_CASE("closest_opposite_pairs") {
  const std::vector<LabeledPoint> pts{{0, 1, 1}, {0, -1, -1}, {10, 11, 1}, {10, 9, -1}};
  const auto [a, b] = closest_opposite_pairs(pts, 5.0);
  CHECK(a.negative.x == 0);
  CHECK(a.negative.z == -1);
  CHECK(a.positive.z == 1);
  CHECK(b.negative.x == 10);
  CHECK(b.negative.z == 9);
  CHECK(b.positive.z == 11);
  CHECK(a.distance == Approx(2));

  CHECK_THROWS_AS(closest_opposite_pairs(std::vector<LabeledPoint>{{0, 0, 1}, {1, 1, 1}, {2, 2, -1}}, 0.0),
                  InsufficientSpread);
  CHECK_THROWS_AS(closest_opposite_pairs(pts, 100.0), InsufficientSpread);
}

TEST_CASE("closest_opposite_pairs matches exhaustive enumeration") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> off(0.0, 1.5);
  std::uniform_real_distribution<double> ux(-10, 10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LabeledPoint> pts;
    for (int i = 0; i < 12; ++i) {
      const double x = ux(rng);
      double d = off(rng);
      if (d == 0.0) d = 0.1;
      pts.push_back({x, x + d, d > 0 ? 1 : -1});
    }
    const double sep = 3.0;
    const auto brute = oracles::closest_pairs(pts, sep);
    int npos = 0, nneg = 0;
    for (const auto& p : pts) (p.label > 0 ? npos : nneg)++;
    if (!brute || npos < 2 || nneg < 2) {
      CHECK_THROWS_AS(closest_opposite_pairs(pts, sep), InsufficientSpread);
      continue;
    }
    const auto [a, b] = closest_opposite_pairs(pts, sep);
    const auto& [ia, ib] = *brute;
    CHECK(a.negative.x == pts[ia.first].x);
    CHECK(a.positive.x == pts[ia.second].x);
    CHECK(b.negative.x == pts[ib.first].x);
    CHECK(b.positive.x == pts[ib.second].x);
  }
}

TEST_CASE("equal distances tie on the negative point's coordinates") {
  // Both pairs 2 m apart, up to rounding; the left pair comes first.
  const double s = std::sqrt(2.0);
  const std::vector<LabeledPoint> pts{{10, 9, -1}, {10 + s, 9 + s, 1}, {0, -1, -1}, {s, -1 + s, 1}};
  const auto [a, b] = closest_opposite_pairs(pts, 1.0);
  CHECK(a.negative.x == 0);
  CHECK(b.negative.x == 10);
}

TEST_CASE("AngleSet union and measure") {
  AngleSet s(Interval{0.1, 0.3});
  s.unite(AngleSet(Interval{0.5, 0.7}));
  CHECK(s.intervals().size() == 2);
  CHECK(s.measure() == Approx(0.4));
  CHECK(s.contains(0.2));
  CHECK_FALSE(s.contains(0.4));
  s.unite(AngleSet(Interval{0.25, 0.55}));
  CHECK(s.intervals().size() == 1);
  CHECK(s.hull().lo == Approx(0.1));
  CHECK(s.hull().hi == Approx(0.7));
}

TEST_CASE("fold_line_angle") {
  const double pi = std::numbers::pi;
  CHECK(fold_line_angle(0.3) == Approx(0.3));
  CHECK(fold_line_angle(0.3 + pi) == Approx(0.3));
  CHECK(fold_line_angle(0.3 - pi) == Approx(0.3));
  CHECK(fold_line_angle(-pi / 2) == Approx(pi / 2));
  CHECK(fold_line_angle(pi) == Approx(0).epsilon(1e-12));
}

TEST_CASE("ParamBox validation") {
  CHECK_THROWS_AS((ParamBox{1.0, 0.5, -1, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((ParamBox{-2.0, 0.5, -1, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((ParamBox{-1.0, 0.5, 1, 1}.validate()), ValidationError);
  CHECK_NOTHROW(ParamBox{}.validate());
}

TEST_CASE("property: separability agrees with the LP oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const auto pts = trial % 2 ? testsupport::random_points(rng, n) : testsupport::separable_points(rng, n);
    CHECK(is_separable(pts) == oracles::lp_separable(pts));
  }
}

TEST_CASE("property: nesting, projection soundness, certainty soundness") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const ParamBox box{-1.2, 1.2, -20, 20};
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = testsupport::separable_points(rng, 8);
    std::vector<LabeledPoint> prefix;
    ParamPolygon prev = feasible_polygon(prefix, box);
    for (const auto& p : pts) {
      prefix.push_back(p);
      const ParamPolygon next = feasible_polygon(prefix, box);
      for (const auto& v : next.vertices) CHECK(prev.contains(v));
      prev = next;
    }
    if (prev.empty()) continue;

    const AngleSet slopes = slope_set(prev);
    const Interval ci = intercept_interval(prev);
    for (const auto& v : prev.vertices) {
      CHECK(slopes.hull().contains(std::atan(v.rho), 1e-12));
      CHECK(ci.contains(v.c, 1e-12));
    }

    // Random interior samples as convex combinations of the vertices.
    std::vector<ParamPoint> samples;
    for (int s = 0; s < 100; ++s) {
      double total = 0.0, r = 0.0, c = 0.0;
      for (const auto& v : prev.vertices) {
        const double w = u01(rng);
        total += w;
        r += w * v.rho;
        c += w * v.c;
      }
      samples.push_back({r / total, c / total});
    }
    std::uniform_real_distribution<double> uq(-12, 12);
    for (int q = 0; q < 20; ++q) {
      const Point2 p{uq(rng), uq(rng)};
      const int y = certainty_label(prev, p);
      if (y == 0) continue;
      for (const auto& s : samples) {
        const double f = classifier_value(s, p);
        CHECK((f * y > 0 || std::abs(f) <= kCertaintyTolerance));
      }
    }
  }
}

TEST_CASE("property: anchor polygon slope hull equals the four-line bound") {
  std::mt19937_64 rng(3);
  // The bound lines are only guaranteed to shape the polygon when the box does
  // not cut it, so use a wide box.
  const ParamBox box{-1.55, 1.55, -500, 500};
  int split = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Scenario sc = testsupport::random_scenario(rng, 0);
    const auto& a = sc.anchors;
    auto theta = [&](const LabeledPoint& p, const LabeledPoint& q) { return std::atan((q.z - p.z) / (q.x - p.x)); };
    const double t13 = theta(a[0], a[2]), t14 = theta(a[0], a[3]);
    const double t23 = theta(a[1], a[2]), t24 = theta(a[1], a[3]);
    // Hull of [t24, t14] U [t23, t13].
    const double lo = std::min(std::min(t24, t14), std::min(t23, t13));
    const double hi = std::max(std::max(t24, t14), std::max(t23, t13));
    const ParamPolygon poly = feasible_polygon(std::vector<LabeledPoint>(a.begin(), a.end()), box);
    const Interval h = slope_set(poly).hull();
    CHECK(h.lo == Approx(lo).epsilon(1e-9));
    CHECK(h.hi == Approx(hi).epsilon(1e-9));
    // The two-piece union is only recorded: count layouts where it is strictly tighter than the hull.
    const Interval first{std::min(t24, t14), std::max(t24, t14)};
    const Interval second{std::min(t23, t13), std::max(t23, t13)};
    if (first.hi < second.lo || second.hi < first.lo) ++split;
  }
  MESSAGE("anchor layouts whose two-piece slope bound has a gap: " << split << " of 50");
}
