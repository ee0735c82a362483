#include "activesep/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <numbers>

namespace activesep {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::string interval_deg(const Interval& i) {
  if (i.empty()) return "empty";
  return fmt("[%.4f, %.4f] deg", i.lo * kDeg, i.hi * kDeg);
}

std::string interval_m(const Interval& i) {
  if (i.empty()) return "empty";
  return fmt("[%.4f, %.4f] m", i.lo, i.hi);
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryStep>& trajectory) {
  os << kTrajectoryCsvHeader << '\n';
  for (const auto& t : trajectory) {
    os << fmt("%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%s\n", t.step, t.state.x, t.state.z, t.state.theta,
              t.action.v, t.action.w, t.true_label, t.observed_label, t.problem.c_str());
  }
}

void write_report(std::ostream& os, const RunReport& r) {
  os << "mode: " << r.mode << '\n';
  os << "scenario hash: " << r.scenario_hash << '\n';
  os << "steps: " << r.steps << '\n';
  if (r.mode == "det") os << "label flips: " << r.flips << '\n';
  os << fmt("true classifier: theta %.4f deg, rho %.6f, c %.4f m\n", r.truth.theta() * kDeg, r.truth.rho, r.truth.c);
  os << "anchors:";
  for (const auto& a : r.anchors) os << fmt(" (%g, %g, %+d)", a.x, a.z, a.label);
  os << '\n';
  const char* space = r.mode == "det" ? "version space" : "MAP version space";
  os << space << " theta: " << interval_deg(r.theta) << '\n';
  os << space << " c: " << interval_m(r.c) << '\n';
  for (const auto& e : r.estimates) {
    os << fmt("estimate %s: theta %.4f deg, rho %.6f, c %.4f m, |dtheta| %.4f deg, |dc| %.4f m",
              to_string(e.estimate.method), e.estimate.theta() * kDeg, e.estimate.rho, e.estimate.c,
              e.error.dtheta * kDeg, e.error.dc);
    if (e.margin) os << fmt(", margin %.6f m", *e.margin);
    os << '\n';
  }
  if (r.belief) {
    const auto& b = *r.belief;
    os << "hypotheses: " << b.hypotheses << '\n';
    os << "MAP eps: " << (b.map_eps.empty() ? "(none)" : b.map_eps) << '\n';
    os << fmt("MAP probability: %.6f\n", b.map_probability);
    os << fmt("credible level: %.4f (attained %.6f, %zu hypotheses)\n", b.level, b.credible.attained,
              b.credible.members.size());
    os << "credible theta:";
    if (b.credible.slopes.empty()) os << " empty";
    for (std::size_t i = 0; i < b.credible.slopes.intervals().size(); ++i) {
      os << (i ? " U " : " ") << interval_deg(b.credible.slopes.intervals()[i]);
    }
    os << '\n';
    os << "credible c: " << interval_m(b.credible.intercepts) << '\n';
    os << "credible set covers truth: " << (b.covers_truth ? "yes" : "no") << '\n';
  }
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  os << fmt("wall time: %.3f s\n", r.wall_seconds);
}

void write_svg(std::ostream& os, const PlotInput& in) {
  const Scenario& sc = *in.scenario;
  const Workspace& ws = sc.workspace;
  constexpr double kSize = 600.0;
  constexpr double kPad = 30.0;
  const double scale = kSize / std::max(ws.x_max - ws.x_min, ws.z_max - ws.z_min);
  const double width = (ws.x_max - ws.x_min) * scale;
  const double height = (ws.z_max - ws.z_min) * scale;
  auto px = [&](double x) { return kPad + (x - ws.x_min) * scale; };
  auto pz = [&](double z) { return kPad + (ws.z_max - z) * scale; };

  os << fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", width + 2 * kPad,
            height + 2 * kPad);
  if (in.timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "<!-- generated " << stamp << " -->\n";
  }
  os << fmt("<defs><clipPath id=\"ws\"><rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"/></clipPath></defs>\n",
            kPad, kPad, width, height);
  os << fmt("<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"white\" stroke=\"black\"/>\n", kPad,
            kPad, width, height);

  os << "<g clip-path=\"url(#ws)\">\n";
  if (!in.band.empty()) {
    constexpr int kSamples = 64;
    std::vector<std::pair<double, double>> upper, lower;
    for (int k = 0; k <= kSamples; ++k) {
      const double x = ws.x_min + (ws.x_max - ws.x_min) * k / kSamples;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& poly : in.band) {
        for (const auto& v : poly.vertices) {
          const double z = v.rho * x + v.c;
          lo = std::min(lo, z);
          hi = std::max(hi, z);
        }
      }
      upper.emplace_back(x, hi);
      lower.emplace_back(x, lo);
    }
    os << "<polygon fill=\"#8fb8de\" fill-opacity=\"0.4\" stroke=\"none\" points=\"";
    for (const auto& [x, z] : upper) os << fmt("%.3f,%.3f ", px(x), pz(z));
    for (auto it = lower.rbegin(); it != lower.rend(); ++it) os << fmt("%.3f,%.3f ", px(it->first), pz(it->second));
    os << "\"/>\n";
  }

  auto line = [&](double rho, double c, const char* style) {
    os << fmt("<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" %s/>\n", px(ws.x_min), pz(rho * ws.x_min + c),
              px(ws.x_max), pz(rho * ws.x_max + c), style);
  };
  line(sc.classifier.rho, sc.classifier.c, "stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
  static const char* kColors[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  for (const auto& e : in.estimates) {
    const std::string style =
        fmt("stroke=\"%s\" stroke-width=\"1.5\"", kColors[static_cast<int>(e.method) % 4]);
    line(e.rho, e.c, style.c_str());
  }

  if (in.trajectory && !in.trajectory->empty()) {
    os << "<polyline fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" points=\"";
    for (const auto& t : *in.trajectory) os << fmt("%.3f,%.3f ", px(t.state.x), pz(t.state.z));
    os << "\"/>\n";
    for (const auto& t : *in.trajectory) {
      const char* color = t.observed_label > 0 ? "#1f77b4" : (t.observed_label < 0 ? "#d62728" : "#777777");
      os << fmt("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"%s\"/>\n", px(t.state.x), pz(t.state.z), color);
    }
  }
  os << "</g>\n";

  for (const auto& a : sc.anchors) {
    const char* color = a.label > 0 ? "#1f77b4" : "#d62728";
    os << fmt("<rect x=\"%.3f\" y=\"%.3f\" width=\"8\" height=\"8\" fill=\"%s\" stroke=\"black\"/>\n", px(a.x) - 4,
              pz(a.z) - 4, color);
  }

  double ly = kPad + 14;
  os << fmt("<text x=\"%.3f\" y=\"%.3f\" font-size=\"11\" font-family=\"sans-serif\">true classifier (dashed)</text>\n",
            kPad + 6, ly);
  for (const auto& e : in.estimates) {
    ly += 14;
    os << fmt("<text x=\"%.3f\" y=\"%.3f\" font-size=\"11\" font-family=\"sans-serif\" fill=\"%s\">%s</text>\n",
              kPad + 6, ly, kColors[static_cast<int>(e.method) % 4], to_string(e.method));
  }
  os << "</svg>\n";
}

}  // namespace activesep
