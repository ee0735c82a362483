#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "activesep/geometry.hpp"
#include "activesep/types.hpp"

namespace activesep {

/// Axis-aligned rectangular workspace, meters.
struct Workspace {
  double x_min = 0.0;
  double x_max = 20.0;
  double z_min = 0.0;
  double z_max = 20.0;

  bool contains(Point2 p) const { return p.x >= x_min && p.x <= x_max && p.z >= z_min && p.z <= z_max; }
  double diagonal() const;
};

/// The hidden classifier sgn(z - rho* x - c*).
struct TrueClassifier {
  double rho = 0.0;
  double c = 0.0;

  ParamPoint params() const { return {rho, c}; }
  double theta() const;
};

/// Union of trusted balls; outside them a label is kept with `keep_prob`.
struct NoiseField {
  std::vector<Point2> trusted_centers;
  double radius = 0.0;
  double keep_prob = 1.0;

  bool trusted(Point2 p) const;
};

/// Unicycle pose. Heading is kept wrapped to (-pi, pi].
struct AgentState {
  double x = 0.0;
  double z = 0.0;
  double theta = 0.0;

  Point2 position() const { return {x, z}; }
};

/// Speed (m per step) and turn (rad per step) command.
struct Action {
  double v = 0.0;
  double w = 0.0;
};

double wrap_angle(double angle);

/// Two-stage unicycle update: the heading turns first, then the agent
/// translates along the new heading.
AgentState step(const AgentState& s, const Action& a);

/// sgn(z - rho* x - c*), with |value| < 1e-12 reported as 0.
int true_label(const TrueClassifier& cl, Point2 p);

/// Counter-based generator: draw k depends only on (seed, k).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed);

  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform double in [0, 1).
  double uniform(std::uint64_t counter) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
};

struct Observation {
  int observed = 0;
  int truth = 0;
};

/// Noisy label at `p`. Consumes exactly draw `counter` of `rng`, whether or not
/// the point is trusted. With no noise field the true label is returned.
Observation observe(const NoiseField* noise, const TrueClassifier& cl, Point2 p, const CounterRng& rng,
                    std::uint64_t counter);

enum class HeadingMode { free, bisector };
enum class CertaintyRegions { anchor, current };

/// Knobs of the greedy controllers and report generation.
struct ControllerOptions {
  HeadingMode heading_mode = HeadingMode::free;
  /// Half-width (rad) of the heading window in bisector mode.
  double bisector_tolerance = 0.1;
  /// Hypotheses below this posterior weight do not constrain the explore step.
  double weight_floor = 0.05;
  /// Certainty regions used by the stochastic controller.
  CertaintyRegions stochastic_regions = CertaintyRegions::anchor;
  /// Pair-midpoint separation for the bisector estimator; default 10% of the
  /// workspace diagonal.
  std::optional<double> min_separation;
  double credible_level = 0.8;
};

/// Complete experiment configuration.
struct Scenario {
  Workspace workspace;
  TrueClassifier classifier;
  /// Labels -1, +1, +1, -1 in this order. The agent starts at anchors[0].
  std::array<LabeledPoint, 4> anchors;
  double initial_heading = 0.0;
  std::optional<NoiseField> noise;
  std::vector<double> v_grid;
  std::vector<double> w_grid;
  double varrho = 0.1;
  int horizon = 10;
  std::uint64_t seed = 1;
  ParamBox initial_box;
  ControllerOptions controller;

  /// Throws ValidationError on any broken invariant.
  void validate() const;
  double min_separation() const;
  AgentState initial_state() const;

  /// 20 m x 20 m, rho* = 0.41, c* = 3.5, v in {0, 0.1, ..., 2},
  /// w in {k * 0.01 : |k * 0.01| <= pi/2}, varrho = 0.1, m = 10, noiseless.
  static Scenario baseline();
  /// baseline() with trusted balls of radius 1 m around the anchors and keep
  /// probability 0.7.
  static Scenario baseline_noisy();
};

/// All integer multiples of `step` inside [from, to], ascending.
std::vector<double> lattice_grid(double from, double to, double step);

}  // namespace activesep
