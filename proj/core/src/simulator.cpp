#include "twosr/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "twosr/csv.hpp"
#include "twosr/errors.hpp"

namespace twosr {

namespace {

AgentConfig clamp_curvature(AgentConfig q, double bound, bool& clamped) {
  for (double* k : {&q.kappa1, &q.kappa2}) {
    if (std::abs(*k) > bound) {
      *k = std::copysign(bound, *k);
      clamped = true;
    }
  }
  return q;
}

}  // namespace

StepResult fk_step(const AgentConfig& q, const StiffnessState& s, const VelocityInput& v,
                   double dt, const GeometryParams& geom, Integrator integrator,
                   const SpiralSet& spirals) {
  check_exclusivity(v, s);
  StepResult out;
  const Vector5d u = v.vector();
  if (u.isZero(0.0)) {
    out.q = q;
    return out;
  }
  const double bound = curvature_bound(s, geom);
  const Vector5d x = q.vector();
  Vector5d next;
  if (integrator == Integrator::Euler) {
    next = x + config_rate(q, s, u, geom, spirals) * dt;
  } else {
    bool ignored = false;
    auto f = [&](const Vector5d& y) {
      const AgentConfig c = clamp_curvature(AgentConfig::from_vector(y), bound, ignored);
      return config_rate(c, s, u, geom, spirals);
    };
    const Vector5d k1 = f(x);
    const Vector5d k2 = f(x + 0.5 * dt * k1);
    const Vector5d k3 = f(x + 0.5 * dt * k2);
    const Vector5d k4 = f(x + dt * k3);
    next = x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  out.q = clamp_curvature(AgentConfig::from_vector(next), bound, out.curvature_saturated);
  return out;
}

Trajectory rollout(const AgentConfig& q0, const PlanResult& plan, const SimOptions& opt,
                   const SpiralSet& spirals) {
  if (plan.stiffness_schedule.size() != plan.velocity_schedule.size()) {
    throw ContractError("plan stiffness and velocity schedules differ in length");
  }
  opt.geometry.validate();
  opt.thermal.validate();
  const double dt = plan.dt;
  std::size_t ticks = 0;
  Trajectory traj;

  SimState st;
  st.q = q0;
  st.thermal = {ThermalState::ambient(opt.thermal), ThermalState::ambient(opt.thermal)};
  traj.states.push_back(st);

  auto advance_thermal = [&](SimState& s) {
    s.thermal[0] = thermal_step(s.thermal[0], opt.thermal.setpoint(s.s.s1), dt, opt.thermal);
    s.thermal[1] = thermal_step(s.thermal[1], opt.thermal.setpoint(s.s.s2), dt, opt.thermal);
  };

  for (std::size_t i = 0; i < plan.steps(); ++i) {
    const StiffnessState target = plan.stiffness_schedule[i];
    if (!(target == st.s)) {
      const StiffnessState from = st.s;
      st.s = target;
      if (opt.thermal_gating) {
        Pause pause{i, from, target, st.t, 0.0};
        while (!request_stiffness(target, st.thermal, opt.thermal).ready) {
          if (st.t - pause.start >= opt.thermal_timeout) {
            traj.aborted = true;
            traj.diagnostic = "thermal transition to stiffness " +
                              std::to_string(target.s1) + std::to_string(target.s2) +
                              " at plan step " + std::to_string(i) + " exceeded " +
                              std::to_string(opt.thermal_timeout) + " s (T1 = " +
                              std::to_string(st.thermal[0].T) + ", T2 = " +
                              std::to_string(st.thermal[1].T) + " degC)";
            pause.duration = st.t - pause.start;
            traj.pauses.push_back(pause);
            return traj;
          }
          advance_thermal(st);
          st.t = static_cast<double>(++ticks) * dt;
          st.v = VelocityInput{};
          st.wheels = WheelSpeeds{};
          st.paused = true;
          st.curvature_saturated = false;
          traj.states.push_back(st);
        }
        pause.duration = st.t - pause.start;
        traj.pauses.push_back(pause);
      }
    }

    const VelocityInput v = plan.velocity_schedule[i];
    st.wheels = wheel_speeds(v, config_matrix(st.q, st.s, opt.geometry), opt.omega_max);
    const StepResult step = fk_step(st.q, st.s, v, dt, opt.geometry, opt.integrator, spirals);
    st.q = step.q;
    st.v = v;
    st.paused = false;
    st.curvature_saturated = step.curvature_saturated;
    if (step.curvature_saturated) ++traj.curvature_saturation_events;
    if (st.wheels.saturated) ++traj.wheel_saturation_events;
    advance_thermal(st);
    st.t = static_cast<double>(++ticks) * dt;
    traj.states.push_back(st);
  }
  return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  write_csv_header(out, "trajectory",
                   {"t", "x", "y", "phi", "kappa1", "kappa2", "s1", "s2", "v1", "v2", "u0", "v0",
                    "r0", "w1", "w2", "w3", "w4", "wheel_sat", "kappa_sat", "paused", "T1", "T2",
                    "u1", "u2", "phase1", "phase2"});
  for (const auto& s : traj.states) {
    const auto& q = s.q;
    const auto& w = s.wheels.omega;
    write_csv_row(out, {s.t, q.x, q.y, q.phi, q.kappa1, q.kappa2, s.s.s1 ? 1.0 : 0.0,
                        s.s.s2 ? 1.0 : 0.0, s.v.v1, s.v.v2, s.v.u0, s.v.v0, s.v.r0, w(0), w(1),
                        w(2), w(3), s.wheels.saturated ? 1.0 : 0.0,
                        s.curvature_saturated ? 1.0 : 0.0, s.paused ? 1.0 : 0.0, s.thermal[0].T,
                        s.thermal[1].T, s.thermal[0].u, s.thermal[1].u,
                        static_cast<double>(s.thermal[0].phase),
                        static_cast<double>(s.thermal[1].phase)});
  }
}

void write_thermal_csv(std::ostream& out, const Trajectory& traj, const ThermalParams& params) {
  write_csv_header(out, "thermal", {"t", "segment", "T", "u", "phase", "setpoint"});
  for (const auto& s : traj.states) {
    for (int seg = 0; seg < 2; ++seg) {
      const auto& th = s.thermal[static_cast<std::size_t>(seg)];
      const bool soft = seg == 0 ? s.s.s1 : s.s.s2;
      out << format_number(s.t) << ',' << (seg + 1) << ',' << format_number(th.T) << ','
          << format_number(th.u) << ',' << to_string(th.phase) << ','
          << format_number(params.setpoint(soft)) << '\n';
    }
  }
}

}  // namespace twosr
