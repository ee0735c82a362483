#include "activesep/stochastic.hpp"

#include <iostream>

namespace activesep {

namespace {

const ParamPolygon& certainty_polygon(const BeliefState& b, const ParamPolygon& anchor_poly, const SccConfig& cfg) {
  return cfg.regions == CertaintyRegions::anchor ? anchor_poly : map_hypothesis(b).polygon;
}

}  // namespace

SccConfig SccConfig::from(const Scenario& sc) { return {sc.controller.weight_floor, sc.controller.stochastic_regions}; }

Decision solve_p3(const AgentState& agent, const BeliefState& b, const ParamPolygon& anchor_poly, const Scenario& sc,
                  const SccConfig& cfg) {
  if (b.size() == 0) throw std::invalid_argument("solve_p3: empty belief");
  AngleSet avoid;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.weight(i) >= cfg.weight_floor) avoid.unite(slope_set(b.hypotheses()[i].polygon));
  }
  return solve_step(agent, {&certainty_polygon(b, anchor_poly, cfg), avoid, HeadingRule::avoid}, sc);
}

Decision solve_p4(const AgentState& agent, const BeliefState& b, const ParamPolygon& anchor_poly, const Scenario& sc,
                  const SccConfig& cfg) {
  if (b.size() == 0) throw std::invalid_argument("solve_p4: empty belief");
  const Hypothesis& map = map_hypothesis(b);
  return solve_step(agent, {&certainty_polygon(b, anchor_poly, cfg), slope_set(map.polygon), HeadingRule::follow}, sc);
}

SccResult run_scc(const Scenario& sc, const SccConfig& cfg, const BeliefObserver& on_belief) {
  sc.validate();
  if (!sc.noise) throw ValidationError("stochastic run needs a noise field");
  const NoiseField& noise = *sc.noise;

  const std::vector<LabeledPoint> anchors(sc.anchors.begin(), sc.anchors.end());
  const ParamPolygon anchor_poly = feasible_polygon(anchors, sc.initial_box);
  SccResult out{{}, BeliefState(anchor_poly, noise.keep_prob), {}, {}};
  if (on_belief) on_belief(out.belief);

  AgentState agent = sc.initial_state();
  out.trajectory.push_back({0, agent, {}, sc.anchors[0].label, sc.anchors[0].label, "start"});
  const CounterRng rng(sc.seed);

  for (int j = 0; j < sc.horizon; ++j) {
    const bool explore = j % 2 == 0;
    const Decision d = explore ? solve_p3(agent, out.belief, anchor_poly, sc, cfg)
                               : solve_p4(agent, out.belief, anchor_poly, sc, cfg);
    agent = step(agent, d.action);
    const Observation obs = observe(&noise, sc.classifier, agent.position(), rng, static_cast<std::uint64_t>(j + 1));

    std::string problem = explore ? "P3" : "P4";
    if (d.stage != LadderStage::none) problem += std::string(":") + to_string(d.stage);
    out.trajectory.push_back({j + 1, agent, d.action, obs.truth, obs.observed, problem});

    if (obs.observed == 0) {
      std::clog << "warning: step " << j + 1 << " landed on the classifier; sample excluded\n";
      continue;
    }
    out.observations.push_back({agent.x, agent.z, obs.observed});
    out.belief.update(agent.position(), obs.observed, noise);
    if (on_belief) on_belief(out.belief);
  }

  const Hypothesis& map = map_hypothesis(out.belief);
  const std::size_t map_index = static_cast<std::size_t>(&map - out.belief.hypotheses().data());
  out.report = {slope_set(map.polygon).hull(), intercept_interval(map.polygon), out.belief.weight(map_index),
                map.eps_string()};
  return out;
}

}  // namespace activesep
