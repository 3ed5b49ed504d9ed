#include "twosr/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "twosr/errors.hpp"

namespace twosr {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Solid:
      return "solid";
    case Phase::Molten:
      return "molten";
    case Phase::Transitioning:
      return "transitioning";
  }
  return "unknown";
}

void ThermalParams::validate() const {
  if (!(tau > 0 && gain > 0 && Kp >= 0 && Ki >= 0)) {
    throw DomainError("thermal plant needs tau > 0, gain > 0 and non-negative PI gains");
  }
  if (!(T_set_soft > T_melt && T_melt > T_solid && T_solid > T_set_rigid &&
        T_set_rigid >= T_amb)) {
    throw DomainError(
        "thermal setpoints must satisfy T_set_soft > T_melt > T_solid > T_set_rigid >= T_amb");
  }
}

ThermalState thermal_step(const ThermalState& state, double setpoint, double dt,
                          const ThermalParams& p) {
  ThermalState next = state;
  const double error = setpoint - state.T;
  if (setpoint <= p.T_amb) {
    next.u = 0.0;
    next.integral = 0.0;
  } else {
    const double integral = state.integral + error * dt;
    const double raw = p.Kp * error + p.Ki * integral;
    next.u = std::clamp(raw, 0.0, 1.0);
    // Conditional integration: the accumulator only moves while unsaturated.
    if (raw == next.u) next.integral = integral;
  }
  next.T = state.T + dt * (-(state.T - p.T_amb) + p.gain * next.u) / p.tau;

  if (next.T >= p.T_melt) next.molten = true;
  if (next.T <= p.T_solid) next.molten = false;
  const bool wants_soft = setpoint >= p.T_melt;
  const bool wants_rigid = setpoint <= p.T_solid;
  if ((wants_soft && !next.molten) || (wants_rigid && next.molten)) {
    next.phase = Phase::Transitioning;
  } else {
    next.phase = next.molten ? Phase::Molten : Phase::Solid;
  }
  return next;
}

double sensor_voltage(double temperature) {
  const double t = std::clamp(temperature, 0.0, kSensorMaxTemperature);
  return 1.1 + 2.2 * t / kSensorMaxTemperature;
}

double sensor_temperature(double voltage) {
  const double v = std::clamp(voltage, 1.1, 3.3);
  return (v - 1.1) / 2.2 * kSensorMaxTemperature;
}

namespace {

double heating_bound(double T, const ThermalParams& p) {
  const double ceiling = p.T_amb + p.gain;
  if (ceiling <= p.T_melt) return std::numeric_limits<double>::infinity();
  if (T >= p.T_melt) return 0.0;
  return p.tau * std::log((ceiling - T) / (ceiling - p.T_melt));
}

double cooling_bound(double T, const ThermalParams& p) {
  if (p.T_solid <= p.T_amb) return std::numeric_limits<double>::infinity();
  if (T <= p.T_solid) return 0.0;
  return p.tau * std::log((T - p.T_amb) / (p.T_solid - p.T_amb));
}

}  // namespace

StiffnessReadiness request_stiffness(const StiffnessState& target,
                                     const std::array<ThermalState, 2>& segments,
                                     const ThermalParams& params) {
  StiffnessReadiness out;
  const std::array<bool, 2> soft{target.s1, target.s2};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& seg = segments[i];
    out.segment_ready[i] = seg.molten == soft[i];
    if (out.segment_ready[i]) {
      out.latency_estimate[i] = 0.0;
    } else {
      out.latency_estimate[i] = soft[i] ? heating_bound(seg.T, params) : cooling_bound(seg.T, params);
    }
  }
  out.ready = out.segment_ready[0] && out.segment_ready[1];
  return out;
}

double transition_latency(double T0, bool to_soft, const ThermalParams& params, double dt,
                          double timeout) {
  ThermalState s;
  s.T = T0;
  s.molten = T0 >= params.T_melt ? true : (T0 <= params.T_solid ? false : !to_soft);
  const double setpoint = params.setpoint(to_soft);
  double t = 0.0;
  while (s.molten != to_soft) {
    if (t >= timeout) return std::numeric_limits<double>::infinity();
    s = thermal_step(s, setpoint, dt, params);
    t += dt;
  }
  return t;
}

}  // namespace twosr
