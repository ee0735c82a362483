#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "activesep/geometry.hpp"
#include "activesep/world.hpp"

namespace activesep {

/// One candidate noise sequence and the version space its implied labels give.
///
/// The weight is kept as counts of kept (factor p) and flipped (factor 1 - p)
/// observations taken outside the trusted region; trusted observations
/// contribute factor 1. Hypotheses with equal counts therefore have exactly
/// equal log weights.
struct Hypothesis {
  std::vector<std::int8_t> eps;
  std::vector<std::int8_t> implied_labels;
  ParamPolygon polygon;
  int kept = 0;
  int flipped = 0;

  /// "+" for eps = +1 and "-" for eps = -1, in step order.
  std::string eps_string() const;
  double log_weight(double keep_prob) const;
};

/// Discrete posterior over surviving noise sequences.
class BeliefState {
 public:
  /// The single empty-sequence hypothesis with the anchor version space.
  BeliefState(const ParamPolygon& anchor_polygon, double keep_prob);

  const std::vector<Hypothesis>& hypotheses() const { return hyps_; }
  std::size_t size() const { return hyps_.size(); }
  int step() const { return step_; }
  double keep_prob() const { return keep_prob_; }

  /// Normalized posterior weight of hypothesis i.
  double weight(std::size_t i) const;
  std::vector<double> weights() const;
  /// log of the sum of unnormalized weights.
  double log_normalizer() const { return log_norm_; }

  /// Branches every hypothesis on eps_t, clips its polygon by the implied label
  /// at `pos`, drops empty version spaces, and renormalizes. At a trusted
  /// position only eps_t = +1 is spawned. Throws std::invalid_argument unless
  /// observed is +-1 and BeliefCollapse if nothing survives.
  void update(Point2 pos, int observed, const NoiseField& noise);

  /// Hypothesis indices by descending weight; ties prefer fewer flips earlier
  /// in the sequence (lexicographically smallest eps with + before -).
  std::vector<std::size_t> ranking() const;

 private:
  void renormalize();

  std::vector<Hypothesis> hyps_;
  double keep_prob_;
  double log_norm_ = 0.0;
  int step_ = 0;
};

BeliefState belief_update(const BeliefState& b, Point2 pos, int observed, const NoiseField& noise);

struct CredibleSet {
  AngleSet slopes;
  Interval intercepts;
  double attained = 0.0;
  std::vector<std::size_t> members;
};

struct CredibleMass {
  std::size_t count = 0;
  double attained = 0.0;
};

/// Shortest prefix of `ranked_weights` (descending) whose sum reaches `level`.
CredibleMass credible_mass(std::span<const double> ranked_weights, double level);

/// Highest-weight hypotheses until their cumulative posterior reaches `level`:
/// union of their slope sets, hull of their intercept intervals.
CredibleSet credible_sets(const BeliefState& b, double level);

/// Max-weight hypothesis; ties by the ranking rule. Throws std::invalid_argument
/// on an empty belief.
const Hypothesis& map_hypothesis(const BeliefState& b);

/// Appends one CSV row per hypothesis:
/// step,hypothesis_id,eps_string,weight,theta_lo_deg,theta_hi_deg,c_lo,c_hi
void write_belief_rows(std::ostream& os, const BeliefState& b);
inline constexpr const char* kBeliefCsvHeader = "step,hypothesis_id,eps_string,weight,theta_lo_deg,theta_hi_deg,c_lo,c_hi";

}  // namespace activesep
