#include "activesep/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "activesep/estimator.hpp"
#include "activesep/oracles.hpp"
#include "activesep/report.hpp"
#include "activesep/scenario_io.hpp"
#include "activesep/stochastic.hpp"

namespace activesep {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

Scenario load(const CommonOptions& c) {
  std::vector<std::string> overrides = c.overrides;
  if (c.seed) overrides.push_back("seed=" + std::to_string(*c.seed));
  if (c.steps) overrides.push_back("horizon=" + std::to_string(*c.steps));
  return load_scenario(c.scenario, overrides);
}

std::ofstream open_out(const std::filesystem::path& dir, const char* name) {
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  return f;
}

/// Bisector, max-margin and polygon-center estimates; failures become notes.
void add_estimates(RunReport& r, const std::vector<LabeledPoint>& data, const ParamPolygon& poly,
                   const Scenario& sc) {
  try {
    const Estimate e = bisector_estimate(data, sc.min_separation());
    r.estimates.push_back({e, estimation_error(e, sc.classifier), std::nullopt});
  } catch (const InsufficientSpread& ex) {
    r.notes.push_back(std::string("bisector estimate unavailable: ") + ex.what());
  }
  try {
    const MarginEstimate m = max_margin_estimate(data);
    r.estimates.push_back({m.estimate, estimation_error(m.estimate, sc.classifier), m.margin});
  } catch (const std::invalid_argument& ex) {
    r.notes.push_back(std::string("max-margin estimate unavailable: ") + ex.what());
  }
  if (!poly.empty()) {
    const Estimate e = polygon_center_estimate(poly);
    r.estimates.push_back({e, estimation_error(e, sc.classifier), std::nullopt});
  }
}

bool covers(const CredibleSet& cs, const TrueClassifier& cl, bool* theta_ok, bool* c_ok) {
  *theta_ok = cs.slopes.contains(cl.theta());
  *c_ok = cs.intercepts.contains(cl.c);
  return *theta_ok && *c_ok;
}

/// Observed points with the labels a hypothesis says were true.
std::vector<LabeledPoint> implied_dataset(const Scenario& sc, const std::vector<LabeledPoint>& observations,
                                          const Hypothesis& h) {
  std::vector<LabeledPoint> data(sc.anchors.begin(), sc.anchors.end());
  for (std::size_t k = 0; k < observations.size(); ++k) {
    data.push_back({observations[k].x, observations[k].z, h.implied_labels.at(k)});
  }
  return data;
}

bool truth_survives(const SccResult& res) {
  std::vector<std::int8_t> truth;
  for (std::size_t i = 1; i < res.trajectory.size(); ++i) {
    if (res.trajectory[i].observed_label != 0) truth.push_back(static_cast<std::int8_t>(res.trajectory[i].true_label));
  }
  return std::any_of(res.belief.hypotheses().begin(), res.belief.hypotheses().end(),
                     [&](const Hypothesis& h) { return h.implied_labels == truth; });
}

int run_det(const Scenario& sc, const RunOptions& opt, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const CfcResult res = run_cfc(sc);

  RunReport r;
  r.scenario_hash = scenario_hash(sc);
  r.mode = "det";
  r.steps = static_cast<int>(res.trajectory.size()) - 1;
  r.flips = res.flips;
  r.truth = sc.classifier;
  r.anchors.assign(sc.anchors.begin(), sc.anchors.end());
  r.theta = slope_set(res.polygon).hull();
  r.c = intercept_interval(res.polygon);
  add_estimates(r, res.dataset, res.polygon, sc);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto& dir = opt.common.out_dir;
  {
    auto f = open_out(dir, "trajectory.csv");
    write_trajectory_csv(f, res.trajectory);
  }
  {
    auto f = open_out(dir, "report.txt");
    write_report(f, r);
  }
  if (opt.svg) {
    PlotInput p{&sc, &res.trajectory, {}, {}, opt.timestamp};
    for (const auto& e : r.estimates) p.estimates.push_back(e.estimate);
    auto f = open_out(dir, "plot.svg");
    write_svg(f, p);
  }
  write_report(out, r);
  return kExitOk;
}

int run_stoch(const Scenario& sc, const RunOptions& opt, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream belief_csv;
  belief_csv << kBeliefCsvHeader << '\n';
  const SccResult res =
      run_scc(sc, SccConfig::from(sc), [&](const BeliefState& b) { write_belief_rows(belief_csv, b); });

  RunReport r;
  r.scenario_hash = scenario_hash(sc);
  r.mode = "stoch";
  r.steps = static_cast<int>(res.trajectory.size()) - 1;
  r.truth = sc.classifier;
  r.anchors.assign(sc.anchors.begin(), sc.anchors.end());
  const Hypothesis& map = map_hypothesis(res.belief);
  r.theta = res.report.theta;
  r.c = res.report.c;
  add_estimates(r, implied_dataset(sc, res.observations, map), map.polygon, sc);

  BeliefSummary bs;
  bs.hypotheses = res.belief.size();
  bs.map_eps = res.report.eps;
  bs.map_probability = res.report.probability;
  bs.level = sc.controller.credible_level;
  bs.credible = credible_sets(res.belief, bs.level);
  bool th = false, c = false;
  bs.covers_truth = covers(bs.credible, sc.classifier, &th, &c);
  r.belief = bs;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto& dir = opt.common.out_dir;
  {
    auto f = open_out(dir, "trajectory.csv");
    write_trajectory_csv(f, res.trajectory);
  }
  {
    auto f = open_out(dir, "belief.csv");
    f << belief_csv.str();
  }
  {
    auto f = open_out(dir, "report.txt");
    write_report(f, r);
  }
  if (opt.svg) {
    PlotInput p{&sc, &res.trajectory, {}, {}, opt.timestamp};
    for (const auto& e : r.estimates) p.estimates.push_back(e.estimate);
    for (std::size_t idx : bs.credible.members) p.band.push_back(res.belief.hypotheses()[idx].polygon);
    auto f = open_out(dir, "plot.svg");
    write_svg(f, p);
  }
  write_report(out, r);
  return kExitOk;
}

CoverageRow replicate(const Scenario& sc, double level) {
  CoverageRow row;
  row.seed = sc.seed;
  const SccResult res = run_scc(sc, SccConfig::from(sc), [&](const BeliefState& b) {
    double sum = 0.0;
    for (double w : b.weights()) sum += w;
    row.normalization_error = std::max(row.normalization_error, std::abs(sum - 1.0));
    row.peak_hypotheses = std::max(row.peak_hypotheses, b.size());
  });
  row.hypotheses = res.belief.size();
  row.credible = credible_sets(res.belief, level);
  row.covered = covers(row.credible, sc.classifier, &row.theta_covered, &row.c_covered);
  row.truth_survived = truth_survives(res);
  return row;
}

std::string pieces_deg(const AngleSet& s) {
  std::string out;
  for (const auto& i : s.intervals()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.6f:%.6f", out.empty() ? "" : "|", i.lo * kDeg, i.hi * kDeg);
    out += buf;
  }
  return out;
}

}  // namespace

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (opt.mode != "det" && opt.mode != "stoch") throw ValidationError("--mode must be det or stoch");
    const Scenario sc = load(opt.common);
    std::filesystem::create_directories(opt.common.out_dir);
    return opt.mode == "det" ? run_det(sc, opt, out) : run_stoch(sc, opt, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ControllerStuck& e) {
    err << "controller stuck: " << e.what() << '\n';
    return kExitStuck;
  } catch (const BeliefCollapse& e) {
    err << e.what() << '\n';
    return kExitStuck;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

std::vector<CoverageRow> run_calibration(const Scenario& base, int runs, double level, unsigned threads) {
  if (runs < 1) throw ValidationError("runs must be at least 1");
  if (!(level > 0.0 && level <= 1.0)) throw ValidationError("level must lie in (0, 1]");
  if (!base.noise) throw ValidationError("calibration needs a stochastic scenario (noise field)");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(runs));

  std::vector<CoverageRow> rows(static_cast<std::size_t>(runs));
  std::vector<std::exception_ptr> errors(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        Scenario sc = base;
        sc.seed = base.seed + i;
        rows[i] = replicate(sc, level);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

int cmd_calibrate(const CalibrateOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const Scenario sc = load(opt.common);
    const auto rows = run_calibration(sc, opt.runs, opt.level, opt.threads);
    std::filesystem::create_directories(opt.common.out_dir);

    auto csv = open_out(opt.common.out_dir, "coverage.csv");
    csv << "run,seed,hypotheses,attained,theta_pieces_deg,c_lo,c_hi,theta_covered,c_covered,covered,truth_survived\n";
    std::size_t covered = 0, theta_ok = 0, c_ok = 0, survived = 0, peak = 0;
    double attained = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      char buf[512];
      std::snprintf(buf, sizeof buf, "%zu,%llu,%zu,%.12g,%s,%.10g,%.10g,%d,%d,%d,%d\n", i,
                    static_cast<unsigned long long>(r.seed), r.hypotheses, r.credible.attained,
                    pieces_deg(r.credible.slopes).c_str(), r.credible.intercepts.lo, r.credible.intercepts.hi,
                    r.theta_covered, r.c_covered, r.covered, r.truth_survived);
      csv << buf;
      covered += r.covered;
      theta_ok += r.theta_covered;
      c_ok += r.c_covered;
      survived += r.truth_survived;
      peak = std::max(peak, r.peak_hypotheses);
      attained += r.credible.attained;
      norm = std::max(norm, r.normalization_error);
    }

    const double n = static_cast<double>(rows.size());
    std::ostringstream summary;
    char buf[256];
    std::snprintf(buf, sizeof buf, "runs: %zu\nlevel: %.4f\n", rows.size(), opt.level);
    summary << buf;
    std::snprintf(buf, sizeof buf, "coverage: %.4f (%zu/%zu)\n", covered / n, covered, rows.size());
    summary << buf;
    std::snprintf(buf, sizeof buf, "theta coverage: %.4f\nc coverage: %.4f\n", theta_ok / n, c_ok / n);
    summary << buf;
    std::snprintf(buf, sizeof buf, "mean attained mass: %.4f\n", attained / n);
    summary << buf;
    std::snprintf(buf, sizeof buf, "truth hypothesis survived: %zu/%zu\npeak hypotheses: %zu\n", survived,
                  rows.size(), peak);
    summary << buf;
    std::snprintf(buf, sizeof buf, "max normalization error: %.3g\n", norm);
    summary << buf;

    auto f = open_out(opt.common.out_dir, "coverage_summary.txt");
    f << summary.str();
    out << summary.str();
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ControllerStuck& e) {
    err << "controller stuck: " << e.what() << '\n';
    return kExitStuck;
  } catch (const BeliefCollapse& e) {
    err << e.what() << '\n';
    return kExitStuck;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const auto data = load_dataset_csv(opt.dataset);
    if (data.empty()) throw ValidationError("dataset is empty");
    oracles::GridSpec grid;
    grid.theta_min = opt.theta_min_deg / kDeg;
    grid.theta_max = opt.theta_max_deg / kDeg;
    grid.c_min = opt.c_min;
    grid.c_max = opt.c_max;
    if (!(grid.theta_min < grid.theta_max && grid.c_min < grid.c_max)) throw ValidationError("empty oracle box");

    char buf[256];
    if (opt.subcommand == "separability-grid") {
      out << (oracles::grid_separable(data, grid) ? "separable" : "non-separable") << '\n';
    } else if (opt.subcommand == "polygon-project") {
      const auto p = oracles::grid_projection(data, grid);
      if (p.empty) {
        out << "empty\n";
      } else {
        std::snprintf(buf, sizeof buf, "theta [%.4f, %.4f] deg\nc [%.4f, %.4f] m\n", p.theta_lo * kDeg,
                      p.theta_hi * kDeg, p.c_lo, p.c_hi);
        out << buf;
      }
    } else if (opt.subcommand == "margin-grid") {
      const auto m = oracles::grid_margin(data);
      if (!m.found) {
        out << "non-separable\n";
      } else {
        std::snprintf(buf, sizeof buf, "margin %.6f m\ntheta %.4f deg\nc %.4f m\n", m.margin, m.theta * kDeg, m.c);
        out << buf;
      }
    } else {
      throw ValidationError("unknown oracle '" + opt.subcommand + "'");
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace activesep
