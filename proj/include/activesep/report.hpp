#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "activesep/belief.hpp"
#include "activesep/control.hpp"
#include "activesep/estimator.hpp"

namespace activesep {

inline constexpr const char* kTrajectoryCsvHeader =
    "step,x,z,theta_rad,v,w,true_label,observed_label,problem_solved";

/// One row per trajectory entry, header first. Numbers use %.17g.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryStep>& trajectory);

struct ReportedEstimate {
  Estimate estimate;
  EstimationError error;
  std::optional<double> margin;
};

struct BeliefSummary {
  std::size_t hypotheses = 0;
  std::string map_eps;
  double map_probability = 0.0;
  double level = 0.0;
  CredibleSet credible;
  bool covers_truth = false;
};

/// Everything report.txt shows.
struct RunReport {
  std::string scenario_hash;
  std::string mode;
  int steps = 0;
  int flips = 0;
  TrueClassifier truth;
  std::vector<LabeledPoint> anchors;
  /// Version space of the deterministic run, or of the MAP hypothesis.
  Interval theta;
  Interval c;
  std::vector<ReportedEstimate> estimates;
  std::vector<std::string> notes;
  std::optional<BeliefSummary> belief;
  double wall_seconds = 0.0;
};

/// Plain-text report; angles in degrees.
void write_report(std::ostream& os, const RunReport& r);

struct PlotInput {
  const Scenario* scenario = nullptr;
  const std::vector<TrajectoryStep>* trajectory = nullptr;
  std::vector<Estimate> estimates;
  /// Polygons whose lines span the credible band (stochastic runs only).
  std::vector<ParamPolygon> band;
  bool timestamp = true;
};

void write_svg(std::ostream& os, const PlotInput& in);

}  // namespace activesep
