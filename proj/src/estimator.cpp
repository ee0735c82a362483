#include "activesep/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "activesep/kernels.hpp"

namespace activesep {

namespace {

struct Vec2 {
  double x, z;
};

Vec2 sub(Point2 a, Point2 b) { return {a.x - b.x, a.z - b.z}; }
double cross(Vec2 a, Vec2 b) { return a.x * b.z - a.z * b.x; }
double norm(Vec2 a) { return std::hypot(a.x, a.z); }

}  // namespace

const char* to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::bisector:
      return "bisector";
    case EstimateMethod::max_margin:
      return "max_margin";
    case EstimateMethod::polygon_center:
      return "polygon_center";
    case EstimateMethod::midpoint_line:
      return "midpoint_line";
  }
  return "?";
}

double Estimate::theta() const { return std::atan(rho); }

Estimate midpoint_line_estimate(const OppositePair& a, const OppositePair& b) {
  const Point2 ma = a.midpoint();
  const Point2 mb = b.midpoint();
  const double dx = mb.x - ma.x;
  if (std::abs(dx) < 1e-12 * std::max(1.0, std::abs(mb.z - ma.z))) {
    throw InsufficientSpread("pair midpoints are vertically aligned");
  }
  const double rho = (mb.z - ma.z) / dx;
  return {rho, ma.z - rho * ma.x, EstimateMethod::midpoint_line};
}

Estimate bisector_estimate(std::span<const LabeledPoint> dataset, double min_separation) {
  const auto [a, b] = closest_opposite_pairs(dataset, min_separation);
  const Point2 p1 = a.negative.position();
  const Point2 p2 = a.positive.position();
  const Point2 p3 = b.positive.position();
  const Point2 p4 = b.negative.position();

  const Vec2 d13 = sub(p3, p1);
  const Vec2 d24 = sub(p4, p2);
  const double denom = cross(d13, d24);
  if (std::abs(denom) <= 1e-12 * norm(d13) * norm(d24)) return midpoint_line_estimate(a, b);

  const double s = cross(sub(p2, p1), d24) / denom;
  const Point2 pm{p1.x + s * d13.x, p1.z + s * d13.z};
  const Vec2 r1 = sub(p1, pm);
  const Vec2 r2 = sub(p2, pm);
  const double n1 = norm(r1);
  const double n2 = norm(r2);
  if (n1 == 0.0 || n2 == 0.0) return midpoint_line_estimate(a, b);

  Vec2 dir{r1.x / n1 + r2.x / n2, r1.z / n1 + r2.z / n2};
  // Opposite rays: the internal bisector is perpendicular to both.
  if (norm(dir) < 1e-12) dir = {-r1.z, r1.x};
  if (std::abs(dir.x) < 1e-12 * norm(dir)) return midpoint_line_estimate(a, b);

  const double rho = dir.z / dir.x;
  return {rho, pm.z - rho * pm.x, EstimateMethod::bisector};
}

MarginEstimate max_margin_estimate(std::span<const LabeledPoint> dataset) {
  std::vector<double> x, z, y;
  for (const auto& p : dataset) {
    if (p.label != 1 && p.label != -1) throw std::invalid_argument("max_margin_estimate: labels must be +1 or -1");
    x.push_back(p.x);
    z.push_back(p.z);
    y.push_back(p.label);
  }
  if (dataset.empty()) throw std::invalid_argument("max_margin_estimate: empty dataset");

  std::vector<double> rho, c, scale;
  auto add = [&](double r, double cc) {
    rho.push_back(r);
    c.push_back(cc);
    scale.push_back(1.0 / std::sqrt(1.0 + r * r));
  };
  const std::size_t n = dataset.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dataset[i].label == dataset[j].label) {
        // Support line through i and j (same label) and the mid-parallel
        // toward each opposite point k.
        if (j <= i) continue;
        const double dx = x[j] - x[i];
        if (dx == 0.0) continue;
        const double r = (z[j] - z[i]) / dx;
        const double c1 = z[i] - r * x[i];
        for (std::size_t k = 0; k < n; ++k) {
          if (dataset[k].label == dataset[i].label) continue;
          add(r, 0.5 * (c1 + (z[k] - r * x[k])));
        }
      } else if (dataset[i].label < 0) {
        // Perpendicular bisector of an opposite pair.
        const double nx = x[j] - x[i];
        const double nz = z[j] - z[i];
        if (nz == 0.0) continue;
        const double mx = 0.5 * (x[i] + x[j]);
        const double mz = 0.5 * (z[i] + z[j]);
        add(-nx / nz, (nx * mx + nz * mz) / nz);
      }
    }
  }
  // Vertical separators, + on the right (rho -> -inf) or on the left.
  {
    constexpr double kTilt = 2e-6;
    const double steep = 1.0 / std::tan(kTilt);
    double zc = 0.0;
    for (double v : z) zc += v;
    zc /= static_cast<double>(n);
    for (int side : {1, -1}) {
      double neg_edge = -std::numeric_limits<double>::infinity();
      double pos_edge = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        const double s = side * x[i];
        if (y[i] > 0) pos_edge = std::min(pos_edge, s);
        else neg_edge = std::max(neg_edge, s);
      }
      if (!(neg_edge < pos_edge) || !std::isfinite(neg_edge) || !std::isfinite(pos_edge)) continue;
      const double xm = 0.5 * side * (neg_edge + pos_edge);
      const double r = -side * steep;
      add(r, zc - r * xm);
    }
  }
  if (rho.empty()) throw std::invalid_argument("max_margin_estimate: no non-vertical candidate separator");

  std::vector<double> margins(rho.size());
  kernels::min_signed_margin(rho, c, scale, x, z, y, margins);
  std::size_t best = 0;
  for (std::size_t k = 1; k < margins.size(); ++k) {
    if (margins[k] > margins[best]) best = k;
  }
  if (!(margins[best] > 0.0)) throw std::invalid_argument("max_margin_estimate: dataset is not separable");
  return {{rho[best], c[best], EstimateMethod::max_margin}, margins[best]};
}

Estimate polygon_center_estimate(const ParamPolygon& poly) {
  if (poly.empty()) throw std::invalid_argument("polygon_center_estimate: empty polygon");
  double r = 0.0, cc = 0.0;
  for (const auto& q : poly.vertices) {
    r += q.rho;
    cc += q.c;
  }
  const double n = static_cast<double>(poly.size());
  return {r / n, cc / n, EstimateMethod::polygon_center};
}

EstimationError estimation_error(const Estimate& e, const TrueClassifier& cl) {
  return {std::abs(std::atan(e.rho) - std::atan(cl.rho)), std::abs(e.c - cl.c)};
}

}  // namespace activesep
