#pragma once

#include <span>

#include "activesep/geometry.hpp"
#include "activesep/world.hpp"

namespace activesep {

enum class EstimateMethod { bisector, max_margin, polygon_center, midpoint_line };

const char* to_string(EstimateMethod m);

/// A classifier estimate z = rho x + c.
struct Estimate {
  double rho = 0.0;
  double c = 0.0;
  EstimateMethod method = EstimateMethod::bisector;

  double theta() const;
};

/// Quadrilateral estimator. The two closest opposite-label pairs give corners
/// p1 (-1), p2 (+1) of the first pair and p3 (+1), p4 (-1) of the second; the
/// diagonals p1p3 and p2p4 meet at pm, and the estimate is the line through pm
/// along the internal bisector of the rays pm->p1 and pm->p2.
///
/// Falls back to midpoint_line_estimate (and labels the result so) when the
/// diagonals are parallel or the bisector is vertical. Propagates
/// InsufficientSpread from closest_opposite_pairs.
Estimate bisector_estimate(std::span<const LabeledPoint> dataset, double min_separation);

/// Line through the midpoints of the two pairs.
Estimate midpoint_line_estimate(const OppositePair& a, const OppositePair& b);

struct MarginEstimate {
  Estimate estimate;
  double margin = 0.0;
};

/// Hard-margin separator, found exactly by scoring every candidate line fixed
/// by two (perpendicular bisector) or three (parallel mid-line) support points.
/// When the widest separator is vertical, which z = rho x + c cannot express,
/// the result is that line tilted by 2e-6 rad about the data's centroid height.
/// Throws std::invalid_argument when no candidate separates the data.
MarginEstimate max_margin_estimate(std::span<const LabeledPoint> dataset);

/// Vertex average of the version space; lies inside it by convexity.
Estimate polygon_center_estimate(const ParamPolygon& poly);

struct EstimationError {
  double dtheta = 0.0;  // radians
  double dc = 0.0;      // meters
};

EstimationError estimation_error(const Estimate& e, const TrueClassifier& cl);

}  // namespace activesep
