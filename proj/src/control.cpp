#include "activesep/control.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

#include "activesep/kernels.hpp"

namespace activesep {

namespace {

constexpr double kPi = std::numbers::pi;

struct Candidates {
  std::size_t nv = 0, nw = 0;
  std::vector<double> x, z, heading, lo, hi;
};

// Next poses for every (v, w) on the grid, row-major in v, plus the extents of
// z - rho x - c over the certainty polygon's vertices.
Candidates expand(const AgentState& agent, const ParamPolygon& certainty, const Scenario& sc) {
  Candidates cand;
  cand.nv = sc.v_grid.size();
  cand.nw = sc.w_grid.size();
  const std::size_t n = cand.nv * cand.nw;
  cand.x.resize(n);
  cand.z.resize(n);
  cand.heading.resize(n);
  for (std::size_t i = 0; i < cand.nv; ++i) {
    for (std::size_t k = 0; k < cand.nw; ++k) {
      const AgentState next = step(agent, {sc.v_grid[i], sc.w_grid[k]});
      const std::size_t idx = i * cand.nw + k;
      cand.x[idx] = next.x;
      cand.z[idx] = next.z;
      cand.heading[idx] = next.theta;
    }
  }
  std::vector<double> rho, c;
  for (const auto& q : certainty.vertices) {
    rho.push_back(q.rho);
    c.push_back(q.c);
  }
  cand.lo.resize(n);
  cand.hi.resize(n);
  kernels::affine_extents(cand.x, cand.z, rho, c, cand.lo, cand.hi);
  return cand;
}

int certainty_from_extents(double lo, double hi) {
  if (lo >= -kCertaintyTolerance && hi > kCertaintyTolerance) return 1;
  if (hi <= kCertaintyTolerance && lo < -kCertaintyTolerance) return -1;
  return 0;
}

double line_angle_distance(double a, double b) { return std::abs(fold_line_angle(a - b)); }

}  // namespace

const char* to_string(LadderStage stage) {
  switch (stage) {
    case LadderStage::none:
      return "";
    case LadderStage::drop_heading:
      return "a";
    case LadderStage::least_penetration:
      return "b";
    case LadderStage::rotate:
      return "c";
  }
  return "?";
}

double step_objective(const Action& a, double varrho) { return a.v * a.v - varrho * (a.v * a.v + a.w * a.w); }

std::optional<double> complement_midpoint(const AngleSet& set) {
  const auto& iv = set.intervals();
  if (iv.empty()) return std::nullopt;
  double best_len = 0.0;
  double best_mid = 0.0;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const double from = iv[i].hi;
    const double to = (i + 1 < iv.size()) ? iv[i + 1].lo : iv.front().lo + kPi;
    if (to - from > best_len) {
      best_len = to - from;
      best_mid = 0.5 * (from + to);
    }
  }
  if (best_len <= 0.0) return std::nullopt;
  return fold_line_angle(best_mid);
}

Decision solve_step(const AgentState& agent, const StepProblem& problem, const Scenario& sc) {
  if (problem.certainty == nullptr || problem.certainty->empty()) {
    throw std::invalid_argument("solve_step: certainty polygon must be non-empty");
  }
  const Candidates cand = expand(agent, *problem.certainty, sc);

  std::optional<double> window_center;
  if (sc.controller.heading_mode == HeadingMode::bisector) {
    if (problem.rule == HeadingRule::avoid) {
      window_center = complement_midpoint(problem.slopes);
    } else if (!problem.slopes.empty()) {
      const Interval h = problem.slopes.hull();
      window_center = 0.5 * (h.lo + h.hi);
    }
  }
  auto heading_ok = [&](double heading) {
    const double line = fold_line_angle(heading);
    const bool inside = problem.slopes.contains(line);
    if (problem.rule == HeadingRule::avoid ? inside : !inside) return false;
    if (window_center && line_angle_distance(line, *window_center) > sc.controller.bisector_tolerance) {
      return false;
    }
    return true;
  };

  auto search = [&](bool with_heading) -> std::optional<Decision> {
    std::optional<Decision> best;
    for (std::size_t i = 0; i < cand.nv; ++i) {
      for (std::size_t k = 0; k < cand.nw; ++k) {
        const std::size_t idx = i * cand.nw + k;
        if (!sc.workspace.contains({cand.x[idx], cand.z[idx]})) continue;
        if (certainty_from_extents(cand.lo[idx], cand.hi[idx]) != 0) continue;
        if (with_heading && !heading_ok(cand.heading[idx])) continue;
        const Action a{sc.v_grid[i], sc.w_grid[k]};
        const double j = step_objective(a, sc.varrho);
        if (!best || j > best->objective) best = Decision{a, LadderStage::none, j};
      }
    }
    return best;
  };

  if (auto d = search(true)) return *d;
  if (auto d = search(false)) {
    d->stage = LadderStage::drop_heading;
    return *d;
  }

  // (b) the translation that enters a certainty region least deeply.
  {
    std::optional<Decision> best;
    double best_depth = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cand.nv; ++i) {
      if (sc.v_grid[i] <= 0.0) continue;
      for (std::size_t k = 0; k < cand.nw; ++k) {
        const std::size_t idx = i * cand.nw + k;
        if (!sc.workspace.contains({cand.x[idx], cand.z[idx]})) continue;
        const int label = certainty_from_extents(cand.lo[idx], cand.hi[idx]);
        const double depth = std::max(0.0, label > 0 ? cand.lo[idx] : -cand.hi[idx]);
        const Action a{sc.v_grid[i], sc.w_grid[k]};
        const double j = step_objective(a, sc.varrho);
        if (!best || depth < best_depth || (depth == best_depth && j > best->objective)) {
          best = Decision{a, LadderStage::least_penetration, j};
          best_depth = depth;
        }
      }
    }
    if (best) return *best;
  }

  // (c) turn in place toward the middle of the admissible directions.
  if (sc.v_grid.front() != 0.0) {
    throw ControllerStuck("no admissible action: every translation leaves the workspace and the speed grid has no 0");
  }
  const std::optional<double> target = complement_midpoint(problem.slopes);
  std::optional<Decision> best;
  double best_err = std::numeric_limits<double>::infinity();
  for (double w : sc.w_grid) {
    const double err = target ? line_angle_distance(wrap_angle(agent.theta + w), *target) : std::abs(w);
    if (!best || err < best_err) {
      best = Decision{{0.0, w}, LadderStage::rotate, step_objective({0.0, w}, sc.varrho)};
      best_err = err;
    }
  }
  return *best;
}

Decision solve_p1(const AgentState& agent, const ParamPolygon& poly, const Scenario& scenario) {
  return solve_step(agent, {&poly, slope_set(poly), HeadingRule::avoid}, scenario);
}

Decision solve_p2(const AgentState& agent, const ParamPolygon& poly, const Scenario& scenario) {
  return solve_step(agent, {&poly, slope_set(poly), HeadingRule::follow}, scenario);
}

CfcResult run_cfc(const Scenario& sc) {
  sc.validate();
  CfcResult out;
  out.dataset.assign(sc.anchors.begin(), sc.anchors.end());
  out.polygon = feasible_polygon(out.dataset, sc.initial_box);

  AgentState agent = sc.initial_state();
  out.trajectory.push_back({0, agent, {}, sc.anchors[0].label, sc.anchors[0].label, "start"});

  const CounterRng rng(sc.seed);
  int label = -1;
  int counter = 0;
  for (int j = 0; j < sc.horizon; ++j) {
    const bool explore = counter % 2 == 0;
    const Decision d = explore ? solve_p1(agent, out.polygon, sc) : solve_p2(agent, out.polygon, sc);
    agent = step(agent, d.action);
    const Observation obs = observe(nullptr, sc.classifier, agent.position(), rng, static_cast<std::uint64_t>(j + 1));

    std::string problem = explore ? "P1" : "P2";
    if (d.stage != LadderStage::none) problem += std::string(":") + to_string(d.stage);
    out.trajectory.push_back({j + 1, agent, d.action, obs.truth, obs.observed, problem});

    if (obs.observed == 0) {
      std::clog << "warning: step " << j + 1 << " landed on the classifier; sample excluded\n";
    } else {
      const LabeledPoint sample{agent.x, agent.z, obs.observed};
      out.dataset.push_back(sample);
      out.polygon = clip_halfplane(out.polygon, sample);
    }

    if (explore) {
      if (obs.observed * label == -1) {
        label = obs.observed;
        ++counter;
        ++out.flips;
      }
    } else {
      ++counter;
    }
  }
  return out;
}

}  // namespace activesep
