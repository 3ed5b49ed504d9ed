#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twosr/app/runner.hpp"
#include "twosr/app/scenario.hpp"
#include "twosr/errors.hpp"
#include "twosr/version.hpp"

namespace fs = std::filesystem;
using namespace twosr;
using namespace twosr::app;

int main(int argc, char** argv) {
  CLI::App cli{"Two-segment soft-rigid agent: spiral refit, planner and rollout"};
  cli.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  cli.require_subcommand(1);

  std::string scenario_file;
  std::string out_dir;
  std::string integrator;
  std::string preset;
  int batch = 0;
  std::uint64_t seed = 1;
  bool no_thermal = false;

  auto* run = cli.add_subcommand("run", "plan and roll out a scenario");
  run->add_option("file", scenario_file, "scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--batch", batch, "run N random start/target pairs instead")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "seed for --batch");
  run->add_flag("--no-thermal", no_thermal, "disable thermal gating of stiffness changes");
  run->add_option("--integrator", integrator, "euler or rk4")->check(CLI::IsMember({"euler", "rk4"}));
  run->add_option("--out", out_dir, "output directory (overrides output_dir)");
  run->add_option("--preset", preset, "planner preset")->check(CLI::IsMember({"default", "paper-compat"}));

  std::string sweep_file;
  auto* sweep = cli.add_subcommand("sweep", "refit the spiral constants over a parameter sweep");
  sweep->add_option("file", sweep_file, "sweep JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "output directory (overrides output_dir)");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? cli.exit(e) : (cli.exit(e), kExitValidation);
  }

  try {
    if (sweep->parsed()) {
      const fs::path out = out_dir;
      return run_sweep(sweep_file, out_dir.empty() ? nullptr : &out, std::cout);
    }

    Scenario scenario = load_scenario(scenario_file);
    if (no_thermal) scenario.sim.thermal_gating = false;
    if (!integrator.empty()) scenario.sim.integrator = parse_integrator(integrator);
    if (preset == "paper-compat") apply_preset(scenario, Preset::PaperCompat);
    if (preset == "default") apply_preset(scenario, Preset::Default);
    const fs::path dir = out_dir.empty() ? scenario.output_dir : fs::path(out_dir);

    if (batch > 0) {
      run_batch(scenario, batch, seed, dir, std::cout);
      return kExitOk;
    }
    const RunReport report = run_scenario(scenario);
    write_artifacts(scenario, report, dir);
    const auto runs = report.plan.mode_runs();
    std::cout << (report.plan.converged && !report.stalled ? "converged" : "not converged")
              << " after " << report.plan.steps() << " steps, distance "
              << report.plan.final_distance() << ", mode runs:";
    for (const auto& s : runs) std::cout << ' ' << mode_label(s);
    std::cout << ", switches " << report.plan.mode_switch_count << ", rollout "
              << report.trajectory.duration() << " s\n";
    if (!report.diagnostic.empty()) std::cerr << report.diagnostic << "\n";
    std::cout << "artifacts in " << dir.string() << "\n";
    return report.exit_code();
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const OracleFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotConverged;
  }
}
