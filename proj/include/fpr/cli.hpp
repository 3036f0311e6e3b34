// ============================================================================
// cli.hpp -- subcommands of the fpr command-line tool.
//
// Each command maps a validated ConfigDocument to one or more report tables.
// run_cli() handles argument parsing, output files and the exit-code contract:
//   0 ok, 2 invalid configuration or usage, 3 simulation/analytic mismatch
//   under --check, 4 unreachable design target.
// ============================================================================
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fpr/config.hpp"
#include "fpr/montecarlo.hpp"
#include "fpr/report.hpp"

namespace fpr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigInvalid = 2,
  kExitCheckFailed = 3,
  kExitUnreachable = 4,
};

inline constexpr std::uint64_t kDefaultTrials = 100'000;
inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr double kCheckZLimit = 5.0;

struct SimulateSettings {
  std::uint64_t trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  bool check = false;
  /// Test hook: lets a fixture tamper with the analytic reference.
  std::function<void(PredictedMetrics&)> adjust_analytic;
};

struct SimulateResult {
  report::Table table;
  bool check_passed = true;
  double max_abs_z = 0.0;
};

std::vector<report::Table> cmd_analytic(const ConfigDocument& config, bool with_pmf = false);
SimulateResult cmd_simulate(const ConfigDocument& config, const SimulateSettings& settings);
std::vector<report::Table> cmd_design(const ConfigDocument& config);
std::vector<report::Table> cmd_bins(const ConfigDocument& config);
std::vector<report::Table> cmd_sweep(const ConfigDocument& config, std::int64_t start_row = 0);

/// Entry point shared by tools/fpr.cpp and the CLI tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fpr::cli
