#pragma once

#include <array>
#include <string_view>

#include "twosr/geometry.hpp"

namespace twosr {

enum class Phase { Solid, Molten, Transitioning };

std::string_view to_string(Phase phase);

/// Lumped first-order model of one segment (heater coil + alloy) under PI
/// control. Plant constants and gains are nominal values, not measurements.
struct ThermalParams {
  double tau = 8.0;           ///< plant time constant, s
  double gain = 80.0;         ///< steady-state rise at full duty, degC
  double T_amb = 25.0;        ///< degC
  double T_set_soft = 65.0;   ///< setpoint when a segment must melt
  double T_set_rigid = 25.0;  ///< setpoint when a segment must solidify
  double T_melt = 62.0;
  double T_solid = 55.0;
  double Kp = 0.35;  ///< 1/degC
  double Ki = 0.01;  ///< 1/(degC s)

  /// Throws DomainError unless T_set_soft > T_melt > T_solid > T_set_rigid >= T_amb
  /// and the plant constants are positive.
  void validate() const;

  double setpoint(bool soft) const { return soft ? T_set_soft : T_set_rigid; }
};

struct ThermalState {
  double T = 25.0;         ///< degC
  double u = 0.0;          ///< heater duty in [0, 1]
  double integral = 0.0;   ///< PI accumulator, degC s
  bool molten = false;     ///< alloy phase latch with hysteresis
  Phase phase = Phase::Solid;

  static ThermalState ambient(const ThermalParams& p) { return ThermalState{p.T_amb}; }
};

/// One explicit step of PI control and plant. The latch melts at T_melt and
/// solidifies at T_solid; `phase` reads Transitioning while the setpoint asks
/// for the other phase and the threshold has not been crossed yet.
/// A setpoint at or below ambient switches the heater off (passive cooling).
ThermalState thermal_step(const ThermalState& state, double setpoint, double dt,
                          const ThermalParams& params);

/// Thermistor read-out: [0, 85] degC maps linearly onto [1.1, 3.3] V, clamped.
double sensor_voltage(double temperature);
double sensor_temperature(double voltage);

inline constexpr double kSensorMaxTemperature = 85.0;

struct StiffnessReadiness {
  bool ready = false;
  std::array<bool, 2> segment_ready{};
  /// Lower-bound time to cross the phase threshold (full heater duty or heater
  /// off), 0 for segments already in phase.
  std::array<double, 2> latency_estimate{};
};

StiffnessReadiness request_stiffness(const StiffnessState& target,
                                     const std::array<ThermalState, 2>& segments,
                                     const ThermalParams& params);

/// Simulated time for a segment starting at `T0` (with its latch consistent
/// with T0) to reach the requested phase. Returns +inf if `timeout` elapses.
double transition_latency(double T0, bool to_soft, const ThermalParams& params, double dt,
                          double timeout = 600.0);

}  // namespace twosr
