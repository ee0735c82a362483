#include "activesep/belief.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

namespace activesep {

std::string Hypothesis::eps_string() const {
  std::string s;
  s.reserve(eps.size());
  for (auto e : eps) s.push_back(e > 0 ? '+' : '-');
  return s;
}

double Hypothesis::log_weight(double keep_prob) const {
  double lw = 0.0;
  if (kept > 0) lw += kept * std::log(keep_prob);
  if (flipped > 0) lw += flipped * std::log1p(-keep_prob);
  return lw;
}

BeliefState::BeliefState(const ParamPolygon& anchor_polygon, double keep_prob) : keep_prob_(keep_prob) {
  if (!(keep_prob > 0.5 && keep_prob <= 1.0)) throw std::invalid_argument("keep probability must lie in (0.5, 1]");
  if (anchor_polygon.empty()) throw std::invalid_argument("anchor version space is empty");
  hyps_.push_back(Hypothesis{{}, {}, anchor_polygon, 0, 0});
  renormalize();
}

void BeliefState::renormalize() {
  double mx = -std::numeric_limits<double>::infinity();
  for (const auto& h : hyps_) mx = std::max(mx, h.log_weight(keep_prob_));
  double sum = 0.0;
  for (const auto& h : hyps_) sum += std::exp(h.log_weight(keep_prob_) - mx);
  log_norm_ = mx + std::log(sum);
}

double BeliefState::weight(std::size_t i) const { return std::exp(hyps_.at(i).log_weight(keep_prob_) - log_norm_); }

std::vector<double> BeliefState::weights() const {
  std::vector<double> w(hyps_.size());
  for (std::size_t i = 0; i < hyps_.size(); ++i) w[i] = weight(i);
  return w;
}

void BeliefState::update(Point2 pos, int observed, const NoiseField& noise) {
  if (observed != 1 && observed != -1) throw std::invalid_argument("belief update needs an observed label of +1 or -1");
  const bool trusted = noise.trusted(pos);
  const bool can_flip = !trusted && keep_prob_ < 1.0;

  std::vector<Hypothesis> next;
  next.reserve(hyps_.size() * (can_flip ? 2 : 1));
  for (const auto& h : hyps_) {
    for (int eps : {1, -1}) {
      if (eps < 0 && !can_flip) continue;
      const int implied = observed * eps;
      ParamPolygon poly = clip_halfplane(h.polygon, {pos.x, pos.z, implied});
      if (poly.empty()) continue;
      Hypothesis child = h;
      child.eps.push_back(static_cast<std::int8_t>(eps));
      child.implied_labels.push_back(static_cast<std::int8_t>(implied));
      child.polygon = std::move(poly);
      if (!trusted) (eps > 0 ? child.kept : child.flipped) += 1;
      next.push_back(std::move(child));
    }
  }
  if (next.empty()) {
    std::ostringstream msg;
    msg << "belief collapse at step " << step_ + 1 << ": observation " << observed << " at (" << pos.x << ", "
        << pos.z << ") " << (trusted ? "(trusted)" : "(untrusted)") << " leaves no separable hypothesis among "
        << hyps_.size();
    for (const auto& h : hyps_) msg << "\n  eps=" << h.eps_string() << " vertices=" << h.polygon.size();
    throw BeliefCollapse(msg.str());
  }
  hyps_ = std::move(next);
  ++step_;
  renormalize();
}

std::vector<std::size_t> BeliefState::ranking() const {
  std::vector<std::size_t> order(hyps_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> lw(hyps_.size());
  for (std::size_t i = 0; i < hyps_.size(); ++i) lw[i] = hyps_[i].log_weight(keep_prob_);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (lw[a] != lw[b]) return lw[a] > lw[b];
    const auto& ea = hyps_[a].eps;
    const auto& eb = hyps_[b].eps;
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end(),
                                        [](std::int8_t x, std::int8_t y) { return x > y; });
  });
  return order;
}

BeliefState belief_update(const BeliefState& b, Point2 pos, int observed, const NoiseField& noise) {
  BeliefState out = b;
  out.update(pos, observed, noise);
  return out;
}

CredibleMass credible_mass(std::span<const double> ranked_weights, double level) {
  if (!(level > 0.0 && level <= 1.0)) throw std::invalid_argument("credible level must lie in (0, 1]");
  CredibleMass out;
  for (double w : ranked_weights) {
    out.attained += w;
    ++out.count;
    if (out.attained >= level - 1e-12) break;
  }
  out.attained = std::min(out.attained, 1.0);
  return out;
}

CredibleSet credible_sets(const BeliefState& b, double level) {
  const auto order = b.ranking();
  std::vector<double> ranked(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) ranked[i] = b.weight(order[i]);
  const CredibleMass mass = credible_mass(ranked, level);

  CredibleSet out;
  out.intercepts = Interval::empty_set();
  out.attained = mass.attained;
  for (std::size_t k = 0; k < mass.count; ++k) {
    const auto& h = b.hypotheses()[order[k]];
    out.slopes.unite(slope_set(h.polygon));
    out.intercepts = out.intercepts.hull(intercept_interval(h.polygon));
    out.members.push_back(order[k]);
  }
  return out;
}

const Hypothesis& map_hypothesis(const BeliefState& b) {
  if (b.size() == 0) throw std::invalid_argument("map_hypothesis: empty belief");
  return b.hypotheses()[b.ranking().front()];
}

void write_belief_rows(std::ostream& os, const BeliefState& b) {
  constexpr double kDeg = 180.0 / std::numbers::pi;
  char buf[256];
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& h = b.hypotheses()[i];
    const Interval th = slope_set(h.polygon).hull();
    const Interval ci = intercept_interval(h.polygon);
    std::snprintf(buf, sizeof buf, "%d,%zu,%s,%.12g,%.10g,%.10g,%.10g,%.10g\n", b.step(), i,
                  h.eps.empty() ? "" : h.eps_string().c_str(), b.weight(i), th.lo * kDeg, th.hi * kDeg, ci.lo, ci.hi);
    os << buf;
  }
}

}  // namespace activesep
