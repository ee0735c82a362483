#pragma once

#include <functional>
#include <vector>

#include "activesep/belief.hpp"
#include "activesep/control.hpp"

namespace activesep {

struct SccConfig {
  /// Hypotheses lighter than this do not constrain the explore heading.
  double weight_floor = 0.05;
  /// Anchor-only certainty regions, or those of the current MAP hypothesis.
  CertaintyRegions regions = CertaintyRegions::anchor;

  static SccConfig from(const Scenario& sc);
};

/// Explore under the belief: heading outside the slope set of every hypothesis
/// of weight >= weight_floor.
Decision solve_p3(const AgentState& agent, const BeliefState& b, const ParamPolygon& anchor_poly,
                  const Scenario& sc, const SccConfig& cfg);

/// Exploit under the belief: heading inside the slope set of the MAP hypothesis.
Decision solve_p4(const AgentState& agent, const BeliefState& b, const ParamPolygon& anchor_poly,
                  const Scenario& sc, const SccConfig& cfg);

/// Algorithm outcome: the MAP hypothesis's parameter sets and posterior.
struct SccReport {
  Interval theta;  // radians
  Interval c;
  double probability = 0.0;
  std::string eps;
};

struct SccResult {
  std::vector<TrajectoryStep> trajectory;
  BeliefState belief;
  SccReport report;
  /// Visited points with their observed (possibly flipped) labels.
  std::vector<LabeledPoint> observations;
};

using BeliefObserver = std::function<void(const BeliefState&)>;

/// Stochastic control-for-classification loop: P3 at even steps, P4 at odd
/// steps, one belief update per observation. `on_belief` (optional) sees the
/// initial belief and the belief after every update. Requires scenario.noise.
SccResult run_scc(const Scenario& sc, const SccConfig& cfg, const BeliefObserver& on_belief = {});

}  // namespace activesep
