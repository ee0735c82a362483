#pragma once

#include <optional>
#include <string>
#include <vector>

#include "activesep/geometry.hpp"
#include "activesep/world.hpp"

namespace activesep {

/// Whether the next heading must avoid or follow the candidate slope set.
enum class HeadingRule { avoid, follow };

/// How far the controller had to relax its constraints.
///   none               all constraints hold
///   drop_heading       (a) heading constraint ignored
///   least_penetration  (b) the translation entering a certainty region least deeply
///   rotate             (c) turn in place toward the largest unconstrained direction
enum class LadderStage { none, drop_heading, least_penetration, rotate };

const char* to_string(LadderStage stage);

/// One greedy step: maximize v^2 - varrho (v^2 + w^2) over the action grid
/// subject to workspace containment, landing outside the certainty regions of
/// `certainty`, and the heading rule against `slopes` (compared modulo pi).
struct StepProblem {
  const ParamPolygon* certainty = nullptr;
  AngleSet slopes;
  HeadingRule rule = HeadingRule::avoid;
};

struct Decision {
  Action action;
  LadderStage stage = LadderStage::none;
  double objective = 0.0;
};

double step_objective(const Action& a, double varrho);

/// Exact argmax over the full grid with the relaxation ladder. Ties go to the
/// lexicographically smallest (v, w). Throws ControllerStuck when even the
/// rotation fallback is unavailable (no v = 0 in the grid).
Decision solve_step(const AgentState& agent, const StepProblem& problem, const Scenario& scenario);

/// Explore: heading outside slope_set(poly).
Decision solve_p1(const AgentState& agent, const ParamPolygon& poly, const Scenario& scenario);
/// Exploit: heading inside slope_set(poly).
Decision solve_p2(const AgentState& agent, const ParamPolygon& poly, const Scenario& scenario);

/// Midpoint of the largest gap of `set` on the circle of line angles (mod pi).
/// nullopt when the set is empty or covers every direction.
std::optional<double> complement_midpoint(const AngleSet& set);

/// One row of a run log. Row 0 is the start pose at anchor 1.
struct TrajectoryStep {
  int step = 0;
  AgentState state;
  Action action;
  int true_label = 0;
  int observed_label = 0;
  std::string problem;
};

struct CfcResult {
  std::vector<TrajectoryStep> trajectory;
  ParamPolygon polygon;
  /// Anchors followed by every visited point with a nonzero label.
  std::vector<LabeledPoint> dataset;
  int flips = 0;
};

/// Deterministic control-for-classification loop: explore until the label
/// flips, exploit once, repeat, for scenario.horizon steps.
CfcResult run_cfc(const Scenario& scenario);

}  // namespace activesep
