#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "activesep/estimator.hpp"
#include "activesep/oracles.hpp"
#include "support.hpp"

using namespace activesep;
using doctest::Approx;

namespace {

const std::vector<LabeledPoint> kQuad{{0, -1, -1}, {0, 1, 1}, {10, 9, -1}, {10, 11, 1}};

}  // namespace

TEST_CASE("bisector estimate on the symmetric quadrilateral") {
  const Estimate e = bisector_estimate(kQuad, 5.0);
  CHECK(e.method == EstimateMethod::bisector);
  CHECK(e.rho == Approx(0.980).epsilon(1e-3));
  CHECK(e.c == Approx(0.098).epsilon(1e-3));
  // The line passes through p_m = (5, 5).
  CHECK(e.rho * 5 + e.c == Approx(5.0));
}

TEST_CASE("midpoint line fallback") {
  const auto [a, b] = closest_opposite_pairs(kQuad, 5.0);
  const Estimate m = midpoint_line_estimate(a, b);
  CHECK(m.method == EstimateMethod::midpoint_line);
  CHECK(m.rho == Approx(1.0));
  CHECK(m.c == Approx(0.0).epsilon(1e-12));

  // Diagonals p1p3 and p2p4 parallel: p1 = (0,0), p2 = (0,1), p3 = (10,2), p4 = (10,3).
  const std::vector<LabeledPoint> par{{0, 0, -1}, {0, 1, 1}, {10, 2, 1}, {10, 3, -1}};
  const Estimate e = bisector_estimate(par, 1.0);
  CHECK(e.method == EstimateMethod::midpoint_line);

  const OppositePair va{{0, 0, -1}, {0, 1, 1}, 1}, vb{{0, 5, -1}, {0, 6, 1}, 1};
  CHECK_THROWS_AS(midpoint_line_estimate(va, vb), InsufficientSpread);
}

TEST_CASE("max-margin fixtures") {
  const MarginEstimate m = max_margin_estimate(kQuad);
  CHECK(m.estimate.rho == Approx(1.0));
  CHECK(m.estimate.c == Approx(0.0).epsilon(1e-9));
  CHECK(m.margin == Approx(1 / std::sqrt(2.0)));

  const MarginEstimate two = max_margin_estimate(std::vector<LabeledPoint>{{0, 1, 1}, {0, -1, -1}});
  CHECK(two.estimate.rho == Approx(0.0).epsilon(1e-12));
  CHECK(two.estimate.c == Approx(0.0).epsilon(1e-12));
  CHECK(two.margin == Approx(1.0));

  CHECK_THROWS_AS(max_margin_estimate(std::vector<LabeledPoint>{{0, 0, 1}, {1, 1, 1}, {0, 1, -1}, {1, 0, -1}}),
                  std::invalid_argument);
}

TEST_CASE("max-margin beats random separating lines and the grid oracle") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> urho(-3, 3), uc(-15, 15);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pts = testsupport::separable_points(rng, 10, 0.05);
    const MarginEstimate m = max_margin_estimate(pts);
    for (const auto& p : pts) CHECK(p.label * (p.z - m.estimate.rho * p.x - m.estimate.c) > 0);
    int tried = 0;
    while (tried < 1000) {
      const double r = urho(rng), c = uc(rng);
      double margin = 1e300;
      for (const auto& p : pts) margin = std::min(margin, p.label * (p.z - r * p.x - c) / std::hypot(1.0, r));
      if (margin <= 0) continue;
      ++tried;
      CHECK(m.margin >= margin - 1e-12);
    }
    if (trial < 3) {
      const auto g = oracles::grid_margin(pts);
      REQUIRE(g.found);
      CHECK(m.margin >= g.margin - 1e-4);
    }
  }
}

TEST_CASE("polygon center") {
  const ParamPolygon square{{{0, 2}, {1, 2}, {1, 4}, {0, 4}}};
  const Estimate e = polygon_center_estimate(square);
  CHECK(e.rho == Approx(0.5));
  CHECK(e.c == Approx(3.0));
  const Estimate single = polygon_center_estimate(ParamPolygon{{{0.3, 1.5}}});
  CHECK(single.rho == 0.3);
  CHECK(single.c == 1.5);
  const Scenario sc = Scenario::baseline();
  const ParamPolygon anchor =
      feasible_polygon(std::vector<LabeledPoint>(sc.anchors.begin(), sc.anchors.end()), sc.initial_box);
  const Estimate a = polygon_center_estimate(anchor);
  CHECK(anchor.contains({a.rho, a.c}));
  CHECK_THROWS_AS(polygon_center_estimate(ParamPolygon{}), std::invalid_argument);
}

TEST_CASE("estimation error") {
  const TrueClassifier truth{0.41, 3.5};
  const EstimationError same = estimation_error({0.41, 3.5}, truth);
  CHECK(same.dtheta == 0.0);
  CHECK(same.dc == 0.0);
  const EstimationError near = estimation_error({0.38, 3.6}, truth);
  CHECK(near.dtheta == Approx(0.0259).epsilon(1e-3));
  CHECK(near.dtheta * 180 / std::numbers::pi == Approx(1.49).epsilon(1e-2));
  CHECK(near.dc == Approx(0.1));
  const EstimationError diag = estimation_error({1.0, 0.0}, {0.0, 0.0});
  CHECK(diag.dtheta == Approx(std::numbers::pi / 4));
  CHECK(diag.dc == 0.0);
}

TEST_CASE("estimators converge on pair sequences closing onto a line") {
  const TrueClassifier truth{0.41, 3.5};
  double last_theta = 1e9;
  for (double d : {2.0, 1.0, 0.5, 0.1, 0.01}) {
    // Two opposite pairs straddling the line at x = 4 and x = 16.
    std::vector<LabeledPoint> pts;
    const double n = std::hypot(1.0, truth.rho);
    for (double x : {4.0, 16.0}) {
      const double z = truth.rho * x + truth.c;
      // Offsets along the normal so each pair is exactly d apart.
      pts.push_back({x + truth.rho * d / (2 * n), z - d / (2 * n), -1});
      pts.push_back({x - truth.rho * d / (2 * n), z + d / (2 * n), 1});
    }
    const ParamPolygon poly = feasible_polygon(pts, ParamBox{-1.2, 1.2, -20, 20});
    const Estimate b = bisector_estimate(pts, 2.0);
    const Estimate mm = max_margin_estimate(pts).estimate;
    const Estimate pc = polygon_center_estimate(poly);
    for (const Estimate& e : {b, mm}) {
      CHECK(estimation_error(e, truth).dtheta < 1e-9);
      CHECK(estimation_error(e, truth).dc < 1e-9);
    }
    const double pc_err = estimation_error(pc, truth).dtheta;
    CHECK(pc_err <= last_theta + 1e-12);
    last_theta = pc_err;
  }
  CHECK(last_theta < 1e-3);
}
