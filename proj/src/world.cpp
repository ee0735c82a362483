#include "activesep/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace activesep {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

bool strictly_sorted_finite(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) return false;
    if (i > 0 && !(v[i - 1] < v[i])) return false;
  }
  return true;
}

}  // namespace

double Workspace::diagonal() const { return std::hypot(x_max - x_min, z_max - z_min); }

double TrueClassifier::theta() const { return std::atan(rho); }

bool NoiseField::trusted(Point2 p) const {
  return std::any_of(trusted_centers.begin(), trusted_centers.end(),
                     [&](Point2 c) { return std::hypot(p.x - c.x, p.z - c.z) <= radius; });
}

double wrap_angle(double angle) {
  double a = std::remainder(angle, 2.0 * std::numbers::pi);  // [-pi, pi]
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

AgentState step(const AgentState& s, const Action& a) {
  const double heading = wrap_angle(s.theta + a.w);
  return {s.x + a.v * std::cos(heading), s.z + a.v * std::sin(heading), heading};
}

int true_label(const TrueClassifier& cl, Point2 p) {
  const double f = p.z - cl.rho * p.x - cl.c;
  if (std::abs(f) < 1e-12) return 0;
  return f > 0.0 ? 1 : -1;
}

CounterRng::CounterRng(std::uint64_t seed) : seed_(seed), key_(splitmix_finalize(seed + kGamma)) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return splitmix_finalize(key_ + (counter + 1) * kGamma);
}

double CounterRng::uniform(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

Observation observe(const NoiseField* noise, const TrueClassifier& cl, Point2 p, const CounterRng& rng,
                    std::uint64_t counter) {
  const int truth = true_label(cl, p);
  const double u = rng.uniform(counter);
  if (noise == nullptr || noise->trusted(p)) return {truth, truth};
  const int eps = u < noise->keep_prob ? 1 : -1;
  return {truth * eps, truth};
}

void Scenario::validate() const {
  check(workspace.x_min < workspace.x_max && workspace.z_min < workspace.z_max,
        "workspace needs x_min < x_max and z_min < z_max");
  check(std::isfinite(classifier.rho) && std::isfinite(classifier.c), "classifier must be finite");
  check(std::abs(std::atan(classifier.rho)) < std::numbers::pi / 2 - 1e-6,
        "classifier is too close to vertical");

  constexpr std::array<int, 4> kLabels{-1, 1, 1, -1};
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const auto& a = anchors[i];
    const std::string name = "anchor " + std::to_string(i + 1);
    check(a.label == kLabels[i], name + " must carry label " + std::to_string(kLabels[i]));
    check(workspace.contains(a.position()), name + " lies outside the workspace");
    check(true_label(classifier, a.position()) == a.label, name + " is not labeled correctly by the classifier");
  }
  check(std::isfinite(initial_heading), "initial heading must be finite");

  if (noise) {
    check(noise->radius >= 0.0, "noise radius must be >= 0");
    check(noise->keep_prob > 0.5 && noise->keep_prob <= 1.0, "keep probability must lie in (0.5, 1]");
  }
  check(!v_grid.empty() && strictly_sorted_finite(v_grid), "v grid must be non-empty and strictly ascending");
  check(v_grid.front() >= 0.0, "speeds must be non-negative");
  check(!w_grid.empty() && strictly_sorted_finite(w_grid), "w grid must be non-empty and strictly ascending");
  check(varrho >= 0.0 && std::isfinite(varrho), "varrho must be >= 0");
  check(horizon >= 0, "horizon must be >= 0");
  initial_box.validate();
  check(initial_box.contains(classifier.params()), "true classifier lies outside the initial parameter box");

  check(controller.bisector_tolerance > 0.0, "bisector tolerance must be positive");
  check(controller.weight_floor >= 0.0 && controller.weight_floor < 0.5, "weight floor must lie in [0, 0.5)");
  check(controller.credible_level > 0.0 && controller.credible_level <= 1.0, "credible level must lie in (0, 1]");
  if (controller.min_separation) check(*controller.min_separation > 0.0, "min separation must be positive");
}

double Scenario::min_separation() const {
  return controller.min_separation.value_or(0.1 * workspace.diagonal());
}

AgentState Scenario::initial_state() const { return {anchors[0].x, anchors[0].z, wrap_angle(initial_heading)}; }

std::vector<double> lattice_grid(double from, double to, double step) {
  if (!(step > 0.0) || !(from <= to)) throw ValidationError("grid range needs from <= to and step > 0");
  const auto k0 = static_cast<long long>(std::ceil(from / step - 1e-9));
  const auto k1 = static_cast<long long>(std::floor(to / step + 1e-9));
  std::vector<double> out;
  for (long long k = k0; k <= k1; ++k) out.push_back(static_cast<double>(k) * step);
  return out;
}

Scenario Scenario::baseline() {
  Scenario s;
  s.workspace = {0.0, 20.0, 0.0, 20.0};
  s.classifier = {0.41, 3.5};
  s.anchors = {LabeledPoint{2.0, 2.0, -1}, LabeledPoint{2.0, 10.0, 1}, LabeledPoint{18.0, 16.0, 1},
               LabeledPoint{18.0, 4.0, -1}};
  s.initial_heading = 0.0;
  s.v_grid = lattice_grid(0.0, 2.0, 0.1);
  s.w_grid = lattice_grid(-std::numbers::pi / 2, std::numbers::pi / 2, 0.01);
  s.varrho = 0.1;
  s.horizon = 10;
  s.seed = 1;
  s.initial_box = {-1.2, 1.2, -20.0, 20.0};
  return s;
}

Scenario Scenario::baseline_noisy() {
  Scenario s = baseline();
  NoiseField nf;
  for (const auto& a : s.anchors) nf.trusted_centers.push_back(a.position());
  nf.radius = 1.0;
  nf.keep_prob = 0.7;
  s.noise = nf;
  return s;
}

}  // namespace activesep
