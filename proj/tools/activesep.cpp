#include <iostream>

#include "CLI11.hpp"

#include "activesep/commands.hpp"

namespace {

void add_common(CLI::App* app, activesep::CommonOptions& c) {
  app->add_option("scenario", c.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  app->add_option("--out", c.out_dir, "Output directory");
  app->add_option("--seed", c.seed, "Override the scenario seed");
  app->add_option("--steps", c.steps, "Override the horizon m");
  app->add_option("--override", c.overrides, "Dotted key=value override, repeatable");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active sampling of a linear classifier by a unicycle agent"};
  app.require_subcommand(1);

  activesep::RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run the deterministic or stochastic controller once");
  add_common(run_cmd, run.common);
  run_cmd->add_option("--mode", run.mode, "det or stoch")->check(CLI::IsMember({"det", "stoch"}));
  run_cmd->add_flag("--no-svg", [&](std::int64_t) { run.svg = false; }, "Skip plot.svg");
  run_cmd->add_flag("--no-timestamp", [&](std::int64_t) { run.timestamp = false; },
                    "Omit the timestamp comment from plot.svg");

  activesep::CalibrateOptions cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "Credible-set coverage over seeded stochastic runs");
  add_common(cal_cmd, cal.common);
  cal_cmd->add_option("--runs", cal.runs, "Number of replicates")->check(CLI::PositiveNumber);
  cal_cmd->add_option("--level", cal.level, "Credible level")->check(CLI::Range(0.0, 1.0));
  cal_cmd->add_option("--threads", cal.threads, "Worker threads (0 = all cores)");

  activesep::OracleOptions orc;
  auto* orc_cmd = app.add_subcommand("oracle", "Brute-force reference computations on a dataset CSV");
  orc_cmd->add_option("subcommand", orc.subcommand, "separability-grid, polygon-project or margin-grid")->required();
  orc_cmd->add_option("dataset", orc.dataset, "CSV with header x,z,label")->required();
  orc_cmd->add_option("--theta-min", orc.theta_min_deg, "Box lower angle, degrees");
  orc_cmd->add_option("--theta-max", orc.theta_max_deg, "Box upper angle, degrees");
  orc_cmd->add_option("--c-min", orc.c_min, "Box lower intercept");
  orc_cmd->add_option("--c-max", orc.c_max, "Box upper intercept");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : activesep::kExitInvalid;
  }

  if (*run_cmd) return activesep::cmd_run(run, std::cout, std::cerr);
  if (*cal_cmd) return activesep::cmd_calibrate(cal, std::cout, std::cerr);
  return activesep::cmd_oracle(orc, std::cout, std::cerr);
}
