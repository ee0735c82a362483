#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "activesep/control.hpp"
#include "activesep/world.hpp"

namespace testsupport {

using namespace activesep;

/// Four anchors -1, +1 on the left and +1, -1 on the right of a random line
/// through [-10, 10]^2, each at least 1 m (vertically) off the line.
inline Scenario random_scenario(std::mt19937_64& rng, int horizon) {
  std::uniform_real_distribution<double> urho(-1.0, 1.0), uc(-5.0, 5.0), uoff(1.0, 6.0);
  std::uniform_real_distribution<double> uleft(-9.0, -5.0), uright(5.0, 9.0);
  Scenario sc = Scenario::baseline();
  sc.workspace = {-10.0, 10.0, -10.0, 10.0};
  sc.horizon = horizon;
  while (true) {
    sc.classifier = {urho(rng), uc(rng)};
    const double xs[4] = {uleft(rng), uleft(rng), uright(rng), uright(rng)};
    const int labels[4] = {-1, 1, 1, -1};
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      const double on = sc.classifier.rho * xs[i] + sc.classifier.c;
      const double z = on + labels[i] * uoff(rng);
      if (z < -9.5 || z > 9.5) ok = false;
      sc.anchors[i] = {xs[i], z, labels[i]};
    }
    if (ok) break;
  }
  sc.validate();
  return sc;
}

inline std::vector<LabeledPoint> random_points(std::mt19937_64& rng, int n, double spread = 10.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::bernoulli_distribution coin(0.5);
  std::vector<LabeledPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back({u(rng), u(rng), coin(rng) ? 1 : -1});
  return pts;
}

/// Points labeled by a random line, dropping any within `gap` of it.
inline std::vector<LabeledPoint> separable_points(std::mt19937_64& rng, int n, double gap = 0.0) {
  std::uniform_real_distribution<double> u(-10.0, 10.0), urho(-1.5, 1.5), uc(-3.0, 3.0);
  const double rho = urho(rng), c = uc(rng);
  std::vector<LabeledPoint> pts;
  bool pos = false, neg = false;
  while (static_cast<int>(pts.size()) < n || !pos || !neg) {
    if (static_cast<int>(pts.size()) >= n) {
      pts.clear();
      pos = neg = false;
    }
    const double x = u(rng), z = u(rng);
    const double f = z - rho * x - c;
    if (std::abs(f) / std::hypot(1.0, rho) <= gap || f == 0.0) continue;
    pts.push_back({x, z, f > 0 ? 1 : -1});
    (f > 0 ? pos : neg) = true;
  }
  return pts;
}

/// Brute-force argmax of a greedy step, independent of the library's
/// controller: plain loops, its own dynamics, certainty from polygon vertices,
/// and the slope set from vertex slopes. Returns false when nothing is
/// feasible with all constraints in force.
inline bool brute_step(const AgentState& agent, const std::vector<ParamPoint>& certainty,
                       const std::vector<std::vector<ParamPoint>>& slope_polys, bool avoid, const Scenario& sc,
                       Action* best) {
  const double pi = std::numbers::pi;
  std::vector<std::pair<double, double>> sets;
  for (const auto& poly : slope_polys) {
    if (poly.empty()) continue;
    double lo = 1e300, hi = -1e300;
    for (const auto& v : poly) {
      lo = std::min(lo, std::atan(v.rho));
      hi = std::max(hi, std::atan(v.rho));
    }
    sets.emplace_back(lo, hi);
  }
  bool found = false;
  double best_j = 0.0;
  for (double v : sc.v_grid) {
    for (double w : sc.w_grid) {
      double th = std::remainder(agent.theta + w, 2 * pi);
      if (th <= -pi) th += 2 * pi;
      const double x = agent.x + v * std::cos(th);
      const double z = agent.z + v * std::sin(th);
      if (x < sc.workspace.x_min || x > sc.workspace.x_max || z < sc.workspace.z_min || z > sc.workspace.z_max) continue;
      double lo = 1e300, hi = -1e300;
      for (const auto& q : certainty) {
        const double f = z - q.rho * x - q.c;
        lo = std::min(lo, f);
        hi = std::max(hi, f);
      }
      const double tau = 1e-9;
      if ((lo >= -tau && hi > tau) || (hi <= tau && lo < -tau)) continue;
      double line = std::remainder(th, pi);
      if (line <= -pi / 2) line += pi;
      bool inside = false;
      for (const auto& [a, b] : sets) inside = inside || (line >= a && line <= b);
      if (avoid ? inside : !inside) continue;
      const double j = v * v - sc.varrho * (v * v + w * w);
      if (!found || j > best_j) {
        found = true;
        best_j = j;
        *best = {v, w};
      }
    }
  }
  return found;
}

}  // namespace testsupport
