#include "twosr/app/runner.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <random>

#include <nlohmann/json.hpp>

#include "twosr/csv.hpp"
#include "twosr/sampling.hpp"
#include "twosr/svg.hpp"
#include "twosr/version.hpp"

namespace twosr::app {

using nlohmann::ordered_json;

std::string mode_label(const StiffnessState& s) {
  return std::string(s.s1 ? "1" : "0") + (s.s2 ? "1" : "0");
}

int RunReport::exit_code() const {
  if (stalled || !plan.converged) return kExitNotConverged;
  if (trajectory.aborted) return kExitThermalTimeout;
  return kExitOk;
}

RunReport run_scenario(const Scenario& scenario) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  std::mt19937_64 rng(scenario.seed);
  report.q0 = scenario.q0 ? *scenario.q0 : random_config(rng, scenario.geometry);
  report.qt = scenario.qt ? *scenario.qt : random_config(rng, scenario.geometry);
  try {
    report.plan = plan(report.q0, report.qt, scenario.planner, scenario.geometry);
  } catch (const PlannerStall& e) {
    report.stalled = true;
    report.diagnostic = e.what();
  }
  if (!report.stalled) {
    report.trajectory = rollout(report.q0, report.plan, scenario.sim);
    if (report.trajectory.aborted) report.diagnostic = report.trajectory.diagnostic;
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

ordered_json config_json(const AgentConfig& q) {
  return ordered_json{{"x", q.x}, {"y", q.y}, {"phi", q.phi}, {"kappa1", q.kappa1},
                      {"kappa2", q.kappa2}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

// Keyframes: start, the first moving state of every stiffness run, end.
std::vector<Keyframe> keyframes(const Trajectory& traj) {
  std::vector<Keyframe> frames;
  if (traj.states.empty()) return frames;
  frames.push_back({traj.states.front().q, traj.states.front().s, 0.0});
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const auto& prev = traj.states[i - 1];
    const auto& cur = traj.states[i];
    if (!cur.paused && (prev.paused || !(prev.s == cur.s))) {
      frames.push_back({prev.q, cur.s, prev.t});
    }
  }
  const auto& last = traj.states.back();
  frames.push_back({last.q, last.s, last.t});
  return frames;
}

}  // namespace

void write_artifacts(const Scenario& scenario, const RunReport& r,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "plan.csv", std::ios::binary);
    write_plan_csv(out, r.plan);
  }
  {
    std::ofstream out(dir / "trajectory.csv", std::ios::binary);
    write_trajectory_csv(out, r.trajectory);
  }
  {
    std::ofstream out(dir / "thermal.csv", std::ios::binary);
    write_thermal_csv(out, r.trajectory, scenario.sim.thermal);
  }
  if (scenario.keyframes) {
    const auto frames = keyframes(r.trajectory);
    for (std::size_t i = 0; i < frames.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "keyframe_%03zu.svg", i);
      write_file(dir / name, render_svg(frames[i], scenario.geometry));
    }
  }

  ordered_json runs = ordered_json::array();
  for (const auto& s : r.plan.mode_runs()) runs.push_back(mode_label(s));
  ordered_json pauses = ordered_json::array();
  for (const auto& p : r.trajectory.pauses) {
    pauses.push_back({{"plan_step", p.plan_step},
                      {"from", mode_label(p.from)},
                      {"to", mode_label(p.to)},
                      {"start", p.start},
                      {"duration", p.duration}});
  }
  ordered_json summary{
      {"tool", std::string(kToolName) + " " + kVersion},
      {"converged", r.plan.converged && !r.stalled},
      {"stalled", r.stalled},
      {"final_distance", r.plan.final_distance()},
      {"q0", config_json(r.q0)},
      {"qt", config_json(r.qt)},
      {"steps", r.plan.steps()},
      {"mode_runs", runs},
      {"mode_run_count", runs.size()},
      {"switch_count", r.plan.mode_switch_count},
      {"plan_duration", static_cast<double>(r.plan.steps()) * r.plan.dt},
      {"rollout_duration", r.trajectory.duration()},
      {"thermal_pauses", pauses},
      {"curvature_saturation_events", r.trajectory.curvature_saturation_events},
      {"wheel_saturation_events", r.trajectory.wheel_saturation_events},
      {"thermal_aborted", r.trajectory.aborted},
      {"diagnostic", r.diagnostic},
      {"wall_time", r.wall_time},
  };
  write_file(dir / "summary.json", summary.dump(2) + "\n");
}

BatchReport run_batch(const Scenario& base, int n, std::uint64_t seed,
                      const std::filesystem::path& dir, std::ostream& log) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "batch.csv", std::ios::binary);
  write_csv_header(csv, "batch",
                   {"run", "converged", "final_distance", "steps", "mode_runs", "switches",
                    "last_rigid", "pause_time"});
  BatchReport rep;
  rep.run_histogram.assign(1, 0);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    Scenario s = base;
    s.q0 = random_config(rng, s.geometry);
    s.qt = random_config(rng, s.geometry);
    const RunReport r = run_scenario(s);
    ++rep.runs;
    const auto runs = r.plan.mode_runs();
    const bool ok = r.plan.converged && !r.stalled;
    const bool last_rigid = runs.empty() || runs.back().rigid();
    double pause_time = 0.0;
    for (const auto& p : r.trajectory.pauses) pause_time += p.duration;
    if (r.stalled) ++rep.stalled;
    if (ok) {
      ++rep.converged;
      if (last_rigid) ++rep.last_rigid;
      if (runs.size() <= 4) ++rep.at_most_four_runs;
      if (rep.run_histogram.size() <= runs.size()) rep.run_histogram.resize(runs.size() + 1, 0);
      ++rep.run_histogram[runs.size()];
    }
    csv << i << ',' << (ok ? 1 : 0) << ',' << format_number(r.plan.final_distance()) << ','
        << r.plan.steps() << ',';
    for (std::size_t k = 0; k < runs.size(); ++k) csv << (k ? "-" : "") << mode_label(runs[k]);
    csv << ',' << r.plan.mode_switch_count << ',' << (last_rigid ? 1 : 0) << ','
        << format_number(pause_time) << '\n';
  }

  auto fraction = [](int num, int den) { return den > 0 ? static_cast<double>(num) / den : 0.0; };
  ordered_json hist = ordered_json::object();
  for (std::size_t k = 0; k < rep.run_histogram.size(); ++k) {
    if (rep.run_histogram[k] > 0) hist[std::to_string(k)] = rep.run_histogram[k];
  }
  ordered_json summary{
      {"tool", std::string(kToolName) + " " + kVersion},
      {"runs", rep.runs},
      {"seed", seed},
      {"converged", rep.converged},
      {"stalled", rep.stalled},
      {"converged_fraction", fraction(rep.converged, rep.runs)},
      {"last_mode_rigid_fraction", fraction(rep.last_rigid, rep.converged)},
      {"at_most_four_runs_fraction", fraction(rep.at_most_four_runs, rep.converged)},
      {"mode_run_histogram", hist},
  };
  write_file(dir / "batch_summary.json", summary.dump(2) + "\n");

  log << "runs " << rep.runs << ", converged " << rep.converged << ", stalled " << rep.stalled
      << "\nlast mode rigid " << rep.last_rigid << "/" << rep.converged << ", at most 4 runs "
      << rep.at_most_four_runs << "/" << rep.converged << "\nmode runs:";
  for (const auto& [k, v] : hist.items()) log << "  " << k << ":" << v.get<int>();
  log << "\n";
  return rep;
}

}  // namespace twosr::app
