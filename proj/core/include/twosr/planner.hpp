#pragma once

#include <array>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "twosr/geometry.hpp"
#include "twosr/jacobian.hpp"
#include "twosr/wheel_model.hpp"

namespace twosr {

enum class Hysteresis {
  Progress,  ///< keep the previous mode while it still reduces the distance to target
  Motion,    ///< keep the previous mode while it still moves q at all
};

struct PlannerParams {
  double lambda = 1.0;   ///< feedback gain, 1/s
  double dt = 0.05;      ///< s
  double eps_goal = 0.02;
  double eps_progress = 1e-8;
  std::array<double, 5> weights{1.0, 1.0, 0.05, 0.3, 0.3};
  double damping = 1e-3;
  int max_steps = 10000;
  Hysteresis hysteresis = Hysteresis::Progress;
  /// Wheel speed ceiling applied while planning; infinity disables it.
  double omega_max = std::numeric_limits<double>::infinity();

  /// Unit distance weights, as in the original unweighted formulation.
  static PlannerParams paper_compat();

  /// Throws DomainError unless every numeric field is strictly positive.
  void validate() const;
};

struct PlanResult {
  std::vector<StiffnessState> stiffness_schedule;
  std::vector<VelocityInput> velocity_schedule;
  std::vector<AgentConfig> trajectory;  ///< includes q0; one entry more than the schedules
  std::vector<double> distance;         ///< weighted distance to target along the trajectory
  int mode_switch_count = 0;
  bool converged = false;
  double dt = 0.05;

  std::size_t steps() const { return velocity_schedule.size(); }
  double final_distance() const { return distance.empty() ? 0.0 : distance.back(); }

  /// Stiffness runs: consecutive equal entries collapsed.
  std::vector<StiffnessState> mode_runs() const;
};

/// Raised when no stiffness hypothesis makes progress.
class PlannerStall : public std::runtime_error {
 public:
  PlannerStall(const std::string& what, AgentConfig q, double distance,
               std::array<double, 4> progress)
      : std::runtime_error(what), q(q), distance(distance), progress(progress) {}

  AgentConfig q;
  double distance;
  std::array<double, 4> progress;  ///< per hypothesis, NaN where infeasible
};

/// Weighted distance with the heading error wrapped to the shortest arc.
double weighted_distance(const AgentConfig& a, const AgentConfig& b,
                         const std::array<double, 5>& weights);

/// qt - q with the heading component wrapped.
Vector5d config_error(const AgentConfig& q, const AgentConfig& qt);

/// Curvature bound enforced in a stiffness state: pi/l when both segments are
/// soft, 2*pi/l otherwise.
double curvature_bound(const StiffnessState& s, const GeometryParams& geom);

/// Throws DomainError if q has non-finite entries or a curvature beyond 2*pi/l.
void check_admissible(const AgentConfig& q, const GeometryParams& geom, const char* name);

/// One stiffness candidate of a planning step.
struct Hypothesis {
  bool feasible = false;  ///< false when a curvature exceeds the state's bound
  Vector5d v = Vector5d::Zero();
  AgentConfig next;
  double distance = std::numeric_limits<double>::infinity();  ///< from next to target
  double progress = std::numeric_limits<double>::quiet_NaN();  ///< d - distance
  double motion = 0.0;  ///< weighted length of the step itself
};

/// Damped least-squares step of state `s` from q, scaled so the curvatures
/// stay within the bound of `s` (and wheel speeds within omega_max).
Hypothesis evaluate_hypothesis(const AgentConfig& q, const AgentConfig& qt, const StiffnessState& s,
                               const PlannerParams& params, const GeometryParams& geom = {},
                               const SpiralSet& spirals = spiral_table());

/// Greedy mode-switching resolved-rate planner.
PlanResult plan(const AgentConfig& q0, const AgentConfig& qt, const PlannerParams& params,
                const GeometryParams& geom = {}, const SpiralSet& spirals = spiral_table());

/// Coordinate-wise linear interpolation over `n_steps` steps (n_steps + 1
/// samples); heading follows the shortest arc.
std::vector<AgentConfig> fk_reference(const AgentConfig& q0, const AgentConfig& qt,
                                      std::size_t n_steps);

void write_plan_csv(std::ostream& out, const PlanResult& result);

}  // namespace twosr
