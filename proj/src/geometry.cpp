#include "activesep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

namespace activesep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = std::numbers::pi / 2.0;
// Absolute slack for the inside test of one clip step.
constexpr double kClipSlack = 1e-12;
// Strictness threshold of the separability test.
constexpr double kSeparationSlack = 1e-12;

void require_signed_labels(std::span<const LabeledPoint> points) {
  for (const auto& p : points) {
    if (p.label != 1 && p.label != -1) {
      throw std::invalid_argument("labeled point with label " + std::to_string(p.label) +
                                  " where +1 or -1 is required");
    }
  }
}

double cross(ParamPoint o, ParamPoint a, ParamPoint b) {
  return (a.rho - o.rho) * (b.c - o.c) - (a.c - o.c) * (b.rho - o.rho);
}

double dist(ParamPoint a, ParamPoint b) { return std::hypot(a.rho - b.rho, a.c - b.c); }

double segment_distance(ParamPoint q, ParamPoint a, ParamPoint b) {
  const double dr = b.rho - a.rho;
  const double dc = b.c - a.c;
  const double len2 = dr * dr + dc * dc;
  if (len2 == 0.0) return dist(q, a);
  const double t = std::clamp(((q.rho - a.rho) * dr + (q.c - a.c) * dc) / len2, 0.0, 1.0);
  return dist(q, {a.rho + t * dr, a.c + t * dc});
}

void dedup(std::vector<ParamPoint>& v) {
  std::vector<ParamPoint> out;
  out.reserve(v.size());
  for (const auto& p : v) {
    if (out.empty() || dist(out.back(), p) > kVertexTolerance) out.push_back(p);
  }
  while (out.size() > 1 && dist(out.front(), out.back()) <= kVertexTolerance) out.pop_back();
  v = std::move(out);
}

}  // namespace

void ParamBox::validate() const {
  if (!(theta_min > -kHalfPi && theta_max < kHalfPi && theta_min < theta_max)) {
    throw ValidationError("parameter box needs -pi/2 < theta_min < theta_max < pi/2");
  }
  if (!(c_min < c_max) || !std::isfinite(c_min) || !std::isfinite(c_max)) {
    throw ValidationError("parameter box needs finite c_min < c_max");
  }
}

bool ParamBox::contains(ParamPoint q) const {
  const double theta = std::atan(q.rho);
  return theta >= theta_min && theta <= theta_max && q.c >= c_min && q.c <= c_max;
}

double ParamPolygon::area() const {
  if (vertices.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& a = vertices[i];
    const auto& b = vertices[(i + 1) % vertices.size()];
    twice += a.rho * b.c - b.rho * a.c;
  }
  return 0.5 * twice;
}

bool ParamPolygon::contains(ParamPoint q, double tol) const {
  switch (vertices.size()) {
    case 0:
      return false;
    case 1:
      return dist(q, vertices[0]) <= tol;
    case 2:
      return segment_distance(q, vertices[0], vertices[1]) <= tol;
    default:
      break;
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& a = vertices[i];
    const auto& b = vertices[(i + 1) % vertices.size()];
    const double len = dist(a, b);
    if (len == 0.0) continue;
    if (cross(a, b, q) / len < -tol) return false;
  }
  return true;
}

Interval Interval::empty_set() { return {kInf, -kInf}; }

Interval Interval::hull(const Interval& other) const {
  if (empty()) return other;
  if (other.empty()) return *this;
  return {std::min(lo, other.lo), std::max(hi, other.hi)};
}

AngleSet::AngleSet(Interval single) {
  if (!single.empty()) intervals_.push_back(single);
}

bool AngleSet::contains(double angle) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return iv.contains(angle); });
}

void AngleSet::unite(const AngleSet& other) {
  std::vector<Interval> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) {
    return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
  });
  intervals_.clear();
  for (const auto& iv : all) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }
}

Interval AngleSet::hull() const {
  if (intervals_.empty()) return Interval::empty_set();
  return {intervals_.front().lo, intervals_.back().hi};
}

double AngleSet::measure() const {
  double total = 0.0;
  for (const auto& iv : intervals_) total += iv.width();
  return total;
}

bool is_separable(std::span<const LabeledPoint> points) {
  require_signed_labels(points);
  std::vector<LabeledPoint> pos, neg;
  for (const auto& p : points) (p.label > 0 ? pos : neg).push_back(p);
  if (pos.empty() || neg.empty()) return true;

  // g(rho) = min_+ (z - rho x) - max_- (z - rho x) is concave piecewise linear;
  // a strict separator with slope rho exists iff g(rho) > 0.
  auto gap = [&](double rho) {
    double lower = kInf;
    for (const auto& p : pos) lower = std::min(lower, p.z - rho * p.x);
    double upper = -kInf;
    for (const auto& p : neg) upper = std::max(upper, p.z - rho * p.x);
    return lower - upper;
  };

  double pos_min_x = kInf, pos_max_x = -kInf, neg_min_x = kInf, neg_max_x = -kInf;
  for (const auto& p : pos) {
    pos_min_x = std::min(pos_min_x, p.x);
    pos_max_x = std::max(pos_max_x, p.x);
  }
  for (const auto& p : neg) {
    neg_min_x = std::min(neg_min_x, p.x);
    neg_max_x = std::max(neg_max_x, p.x);
  }
  // Unbounded growth of g in either tail.
  if (neg_min_x - pos_max_x > 0.0 || pos_min_x - neg_max_x > 0.0) return true;

  // Otherwise the supremum is attained at a breakpoint or on a flat tail.
  std::vector<double> candidates{0.0};
  double extent = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double dx = points[i].x - points[j].x;
      if (dx == 0.0) continue;
      const double rho = (points[i].z - points[j].z) / dx;
      candidates.push_back(rho);
      extent = std::max(extent, std::abs(rho));
    }
  }
  candidates.push_back(extent + 1.0);
  candidates.push_back(-extent - 1.0);
  return std::any_of(candidates.begin(), candidates.end(),
                     [&](double rho) { return gap(rho) > kSeparationSlack; });
}

ParamPolygon box_polygon(const ParamBox& box) {
  box.validate();
  const double r0 = std::tan(box.theta_min);
  const double r1 = std::tan(box.theta_max);
  return ParamPolygon{{{r0, box.c_min}, {r1, box.c_min}, {r1, box.c_max}, {r0, box.c_max}}};
}

ParamPolygon clip_halfplane(const ParamPolygon& poly, const LabeledPoint& point) {
  if (point.label != 1 && point.label != -1) {
    throw std::invalid_argument("clip_halfplane: label must be +1 or -1");
  }
  const auto& v = poly.vertices;
  if (v.empty()) return {};
  const Point2 p = point.position();
  const double y = point.label;
  auto side = [&](ParamPoint q) { return y * classifier_value(q, p); };

  if (v.size() == 1) {
    if (side(v[0]) >= -kClipSlack) return poly;
    return {};
  }

  std::vector<ParamPoint> out;
  out.reserve(v.size() + 2);
  // A two-vertex polygon is a segment; walking it as a closed loop would emit
  // the crossing twice, which dedup removes.
  for (std::size_t i = 0; i < v.size(); ++i) {
    const ParamPoint cur = v[i];
    const ParamPoint nxt = v[(i + 1) % v.size()];
    const double gc = side(cur);
    const double gn = side(nxt);
    const bool in_c = gc >= -kClipSlack;
    const bool in_n = gn >= -kClipSlack;
    if (in_c) out.push_back(cur);
    if (in_c != in_n) {
      const double t = std::clamp(gc / (gc - gn), 0.0, 1.0);
      out.push_back({cur.rho + t * (nxt.rho - cur.rho), cur.c + t * (nxt.c - cur.c)});
    }
  }
  dedup(out);
  return ParamPolygon{std::move(out)};
}

ParamPolygon feasible_polygon(std::span<const LabeledPoint> points, const ParamBox& box) {
  require_signed_labels(points);
  ParamPolygon poly = box_polygon(box);
  for (const auto& p : points) {
    poly = clip_halfplane(poly, p);
    if (poly.empty()) break;
  }
  return poly;
}

AngleSet slope_set(const ParamPolygon& poly) {
  if (poly.empty()) return {};
  double lo = kInf, hi = -kInf;
  for (const auto& q : poly.vertices) {
    lo = std::min(lo, q.rho);
    hi = std::max(hi, q.rho);
  }
  return AngleSet(Interval{std::atan(lo), std::atan(hi)});
}

Interval intercept_interval(const ParamPolygon& poly) {
  if (poly.empty()) return Interval::empty_set();
  Interval out{kInf, -kInf};
  for (const auto& q : poly.vertices) {
    out.lo = std::min(out.lo, q.c);
    out.hi = std::max(out.hi, q.c);
  }
  return out;
}

int certainty_label(const ParamPolygon& poly, Point2 p) {
  if (poly.empty()) throw std::invalid_argument("certainty_label: empty polygon");
  double fmin = kInf, fmax = -kInf;
  for (const auto& q : poly.vertices) {
    const double f = classifier_value(q, p);
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);
  }
  if (fmin >= -kCertaintyTolerance && fmax > kCertaintyTolerance) return 1;
  if (fmax <= kCertaintyTolerance && fmin < -kCertaintyTolerance) return -1;
  return 0;
}

Point2 OppositePair::midpoint() const {
  return {0.5 * (negative.x + positive.x), 0.5 * (negative.z + positive.z)};
}

std::pair<OppositePair, OppositePair> closest_opposite_pairs(std::span<const LabeledPoint> points,
                                                             double min_separation) {
  require_signed_labels(points);
  struct Candidate {
    std::size_t neg, pos;
    double d;
  };
  std::vector<Candidate> cands;
  std::size_t n_pos = 0, n_neg = 0;
  for (const auto& p : points) (p.label > 0 ? n_pos : n_neg) += 1;
  if (n_pos < 2 || n_neg < 2) {
    throw InsufficientSpread("closest_opposite_pairs needs at least two points of each label");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].label != -1) continue;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (points[j].label != 1) continue;
      cands.push_back({i, j, std::hypot(points[i].x - points[j].x, points[i].z - points[j].z)});
    }
  }
  auto key = [&](const Candidate& k) {
    const auto& n = points[k.neg];
    const auto& p = points[k.pos];
    // Distances equal to 1e-9 m count as ties; equal-length steps make them common.
    return std::make_tuple(std::llround(k.d * 1e9), n.x, n.z, p.x, p.z);
  };
  std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) { return key(a) < key(b); });

  auto make = [&](const Candidate& k) { return OppositePair{points[k.neg], points[k.pos], k.d}; };
  const Candidate first = cands.front();
  const OppositePair a = make(first);
  const Point2 ma = a.midpoint();
  for (const auto& k : cands) {
    if (k.neg == first.neg || k.pos == first.pos) continue;
    const OppositePair b = make(k);
    const Point2 mb = b.midpoint();
    if (std::hypot(ma.x - mb.x, ma.z - mb.z) >= min_separation) return {a, b};
  }
  throw InsufficientSpread("no second opposite-label pair at least " + std::to_string(min_separation) +
                           " m from the closest pair");
}

double fold_line_angle(double angle) {
  double a = std::remainder(angle, std::numbers::pi);  // [-pi/2, pi/2]
  if (a <= -kHalfPi) a += std::numbers::pi;
  return a;
}

}  // namespace activesep
