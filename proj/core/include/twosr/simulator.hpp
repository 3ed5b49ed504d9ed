#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "twosr/geometry.hpp"
#include "twosr/jacobian.hpp"
#include "twosr/planner.hpp"
#include "twosr/thermal.hpp"
#include "twosr/wheel_model.hpp"

namespace twosr {

enum class Integrator { Euler, RK4 };

struct StepResult {
  AgentConfig q;
  bool curvature_saturated = false;  ///< a curvature was clamped to the mode bound
};

/// One forward-kinematics step q' = q + J(q, s) v dt. Curvatures are clamped
/// to the bound of the stiffness state. Throws ContractError if v drives the
/// group that s disables.
StepResult fk_step(const AgentConfig& q, const StiffnessState& s, const VelocityInput& v,
                   double dt, const GeometryParams& geom, Integrator integrator = Integrator::Euler,
                   const SpiralSet& spirals = spiral_table());

struct SimOptions {
  Integrator integrator = Integrator::Euler;
  bool thermal_gating = true;
  double thermal_timeout = 120.0;  ///< s, per stiffness transition
  double omega_max = kDefaultOmegaMax;
  GeometryParams geometry{};
  ThermalParams thermal{};
};

struct SimState {
  double t = 0.0;
  AgentConfig q;
  StiffnessState s;  ///< commanded
  VelocityInput v;   ///< applied over the step that ends at t; zero while paused
  std::array<ThermalState, 2> thermal{};
  WheelSpeeds wheels;
  bool paused = false;
  bool curvature_saturated = false;
};

struct Pause {
  std::size_t plan_step = 0;  ///< plan step that waited for the transition
  StiffnessState from;
  StiffnessState to;
  double start = 0.0;
  double duration = 0.0;
};

struct Trajectory {
  std::vector<SimState> states;  ///< includes the initial state
  std::vector<Pause> pauses;
  int curvature_saturation_events = 0;
  int wheel_saturation_events = 0;
  bool aborted = false;
  std::string diagnostic;

  double duration() const { return states.empty() ? 0.0 : states.back().t; }
};

/// Replays a plan from q0, starting rigid at ambient temperature. With
/// gating on, every stiffness-run boundary (including a soft first run)
/// holds the wheels still until both segments report the requested phase.
Trajectory rollout(const AgentConfig& q0, const PlanResult& plan, const SimOptions& options = {},
                   const SpiralSet& spirals = spiral_table());

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_thermal_csv(std::ostream& out, const Trajectory& traj, const ThermalParams& params);

}  // namespace twosr
