#pragma once

#include <span>
#include <utility>
#include <vector>

#include "activesep/types.hpp"

namespace activesep {

/// Rectangle in (theta, c) space bounding the admissible classifiers.
struct ParamBox {
  double theta_min = -1.2;
  double theta_max = 1.2;
  double c_min = -10.0;
  double c_max = 10.0;

  /// Throws ValidationError unless -pi/2 < theta_min < theta_max < pi/2 and
  /// c_min < c_max.
  void validate() const;
  bool contains(ParamPoint q) const;
};

/// Convex counterclockwise polygon in (rho, c) space.
///
/// An empty vertex list means no classifier is consistent with the data.
/// One or two vertices describe a degenerate (point / segment) version space,
/// which is still valid for projections.
struct ParamPolygon {
  std::vector<ParamPoint> vertices;

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
  double area() const;
  /// Containment with absolute tolerance `tol`, valid for degenerate polygons.
  bool contains(ParamPoint q, double tol = 1e-9) const;
};

/// Closed interval of meters. An empty interval has lo > hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval empty_set();
  bool empty() const { return lo > hi; }
  bool contains(double v, double tol = 0.0) const { return !empty() && v >= lo - tol && v <= hi + tol; }
  double width() const { return empty() ? 0.0 : hi - lo; }
  Interval hull(const Interval& other) const;
};

/// Disjoint, sorted union of closed angle intervals inside (-pi/2, pi/2).
class AngleSet {
 public:
  AngleSet() = default;
  explicit AngleSet(Interval single);

  bool empty() const { return intervals_.empty(); }
  const std::vector<Interval>& intervals() const { return intervals_; }
  bool contains(double angle) const;
  /// Union, merging touching or overlapping pieces.
  void unite(const AngleSet& other);
  /// Smallest single interval covering the set (empty if the set is empty).
  Interval hull() const;
  /// Total measure of the set in radians.
  double measure() const;

 private:
  std::vector<Interval> intervals_;
};

/// Vertex tolerance used when clipping and deduplicating polygons.
inline constexpr double kVertexTolerance = 1e-9;
/// Sign threshold used by the region-of-certainty test.
inline constexpr double kCertaintyTolerance = 1e-9;

/// Signed classifier value z - rho * x - c.
inline double classifier_value(ParamPoint line, Point2 p) { return p.z - line.rho * p.x - line.c; }

/// True iff some non-vertical line z = rho x + c puts every +1 point strictly
/// above and every -1 point strictly below it. Throws std::invalid_argument on
/// label 0.
bool is_separable(std::span<const LabeledPoint> points);

/// The box image {(tan theta, c)} as a counterclockwise rectangle.
ParamPolygon box_polygon(const ParamBox& box);

/// Clips `poly` by the halfplane y (z - rho x - c) >= 0 of one labeled point.
ParamPolygon clip_halfplane(const ParamPolygon& poly, const LabeledPoint& point);

/// Version space of `points` inside the box image. Empty when infeasible.
ParamPolygon feasible_polygon(std::span<const LabeledPoint> points, const ParamBox& box);

/// {arctan rho : (rho, c) in poly}, a single interval or empty.
AngleSet slope_set(const ParamPolygon& poly);

/// {c : (rho, c) in poly}, or Interval::empty_set().
Interval intercept_interval(const ParamPolygon& poly);

/// +1 / -1 when every classifier in `poly` agrees on the label of `p`, 0 when
/// the label is still uncertain. Throws std::invalid_argument on an empty polygon.
int certainty_label(const ParamPolygon& poly, Point2 p);

/// A -1 / +1 pair of dataset points.
struct OppositePair {
  LabeledPoint negative;
  LabeledPoint positive;
  double distance = 0.0;

  Point2 midpoint() const;
};

/// The closest opposite-label pair, and the closest opposite-label pair that
/// shares no point with it and whose midpoint is at least `min_separation`
/// from the first pair's midpoint. Throws InsufficientSpread when no such
/// second pair exists. Distances equal to within 1e-9 m tie and fall back to
/// the (x, z) order of the negative point, then of the positive point.
std::pair<OppositePair, OppositePair> closest_opposite_pairs(std::span<const LabeledPoint> points,
                                                             double min_separation);

/// Folds a direction angle onto the line-angle range (-pi/2, pi/2].
double fold_line_angle(double angle);

}  // namespace activesep
