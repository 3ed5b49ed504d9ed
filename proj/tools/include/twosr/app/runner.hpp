#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "twosr/app/scenario.hpp"

namespace twosr::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNotConverged = 3,
  kExitThermalTimeout = 4,
};

struct RunReport {
  AgentConfig q0;
  AgentConfig qt;
  PlanResult plan;
  Trajectory trajectory;
  bool stalled = false;
  std::string diagnostic;
  double wall_time = 0.0;  ///< s

  int exit_code() const;
};

/// Plans and rolls out one scenario; q0/qt missing from the scenario are
/// drawn from its seed.
RunReport run_scenario(const Scenario& scenario);

/// Writes plan.csv, trajectory.csv, thermal.csv, keyframe_*.svg and
/// summary.json under `dir`.
void write_artifacts(const Scenario& scenario, const RunReport& report,
                     const std::filesystem::path& dir);

struct BatchReport {
  int runs = 0;
  int converged = 0;
  int stalled = 0;
  int last_rigid = 0;          ///< among converged runs
  int at_most_four_runs = 0;   ///< among converged runs
  std::vector<int> run_histogram;  ///< index = number of mode runs
};

/// `n` random start/target pairs drawn in sequence from one generator seeded
/// with `seed`. Writes batch.csv and batch_summary.json under `dir`.
BatchReport run_batch(const Scenario& base, int n, std::uint64_t seed,
                      const std::filesystem::path& dir, std::ostream& log);

/// Parameter sweep of the spiral refit, see README for the file format.
/// Writes sweep.csv under the directory and prints a table to `log`.
int run_sweep(const std::filesystem::path& file, const std::filesystem::path* out_override,
              std::ostream& log);

std::string mode_label(const StiffnessState& s);

}  // namespace twosr::app
