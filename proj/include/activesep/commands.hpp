#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "activesep/belief.hpp"
#include "activesep/world.hpp"

namespace activesep {

/// Exit codes of the command layer.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitStuck = 3;

struct CommonOptions {
  std::filesystem::path scenario;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  std::vector<std::string> overrides;
};

struct RunOptions {
  CommonOptions common;
  std::string mode = "det";
  bool svg = true;
  bool timestamp = true;
};

/// Writes trajectory.csv, belief.csv (stoch), report.txt and plot.svg into
/// out_dir. Returns 0, 2 on invalid input, 3 on ControllerStuck or BeliefCollapse.
int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err);

/// One stochastic replicate of a calibration batch.
struct CoverageRow {
  std::uint64_t seed = 0;
  std::size_t hypotheses = 0;
  std::size_t peak_hypotheses = 0;
  CredibleSet credible;
  bool theta_covered = false;
  bool c_covered = false;
  bool covered = false;
  /// The hypothesis whose eps matches the realized flips survived every update.
  bool truth_survived = true;
  /// max over updates of |sum of weights - 1|.
  double normalization_error = 0.0;
};

/// Replicate r runs `base` with seed base.seed + r. Replicates run on up to
/// `threads` workers (0 = hardware concurrency); rows come back in seed order.
std::vector<CoverageRow> run_calibration(const Scenario& base, int runs, double level, unsigned threads = 0);

struct CalibrateOptions {
  CommonOptions common;
  int runs = 200;
  double level = 0.8;
  unsigned threads = 0;
};

/// Writes coverage.csv and coverage_summary.txt into out_dir and prints the summary.
int cmd_calibrate(const CalibrateOptions& opt, std::ostream& out, std::ostream& err);

struct OracleOptions {
  std::string subcommand;
  std::filesystem::path dataset;
  double theta_min_deg = -1.2 * 180.0 / 3.14159265358979323846;
  double theta_max_deg = 1.2 * 180.0 / 3.14159265358979323846;
  double c_min = -10.0;
  double c_max = 10.0;
};

/// separability-grid, polygon-project or margin-grid on a CSV dataset.
int cmd_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace activesep
