#pragma once

// Brute-force reference computations used to check the geometry, estimator
// and controller code. Nothing here calls into the library proper; only the
// plain data types are shared.

#include <optional>
#include <span>
#include <utility>

#include "activesep/types.hpp"

namespace activesep::oracles {

/// Lattice over (theta, c): theta = k * dtheta, c = k * dc inside the bounds.
struct GridSpec {
  double theta_min = -1.2;  // radians
  double theta_max = 1.2;
  double c_min = -10.0;
  double c_max = 10.0;
  double dtheta = 0.25 * 3.14159265358979323846 / 180.0;
  double dc = 0.05;
};

/// Strict separability by an LP in (rho, c, t): maximize t subject to
/// y_i (z_i - rho x_i - c) >= t, |rho| <= 1e3, |c| <= 1e5, t <= 1, solved by
/// enumerating every vertex. Separable iff the optimum exceeds 1e-9.
bool lp_separable(std::span<const LabeledPoint> points);

/// Some lattice point classifies every point strictly correctly.
bool grid_separable(std::span<const LabeledPoint> points, const GridSpec& grid);

struct Projection {
  bool empty = true;
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  double c_lo = 0.0;
  double c_hi = 0.0;
};

/// theta and c ranges of the lattice points satisfying y_i (z_i - tan(theta) x_i - c) >= 0.
Projection grid_projection(std::span<const LabeledPoint> points, const GridSpec& grid);

/// theta and c ranges of the lattice points whose cell (half a step each way)
/// may touch the closed version space: each constraint is relaxed by its
/// largest change over the cell. Every exact extreme lies within half a step
/// of this range, and grid_projection lies inside the exact one.
Projection grid_cover_projection(std::span<const LabeledPoint> points, const GridSpec& grid);

/// Exact ranges over the closed version space inside the box, from every
/// pairwise intersection of constraint and box lines that is feasible.
Projection exact_projection(std::span<const LabeledPoint> points, double theta_min, double theta_max,
                            double c_min, double c_max);

struct MarginResult {
  bool found = false;
  double margin = 0.0;
  double theta = 0.0;
  double c = 0.0;
};

/// Best minimum point-line distance over theta = k * dtheta in (-pi/2, pi/2)
/// and c = k * dc inside the window of separating intercepts for that theta.
MarginResult grid_margin(std::span<const LabeledPoint> points, double dtheta = 0.05 * 3.14159265358979323846 / 180.0,
                         double dc = 0.01);

/// Index pairs (negative, positive) of the closest opposite pair and of the
/// closest disjoint pair whose midpoint lies at least `min_separation` away,
/// found by scanning every pair. Ties by (d rounded to 1e-9 m, negative x, negative z,
/// positive x, positive z).
std::optional<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>>
closest_pairs(std::span<const LabeledPoint> points, double min_separation);

}  // namespace activesep::oracles
