#pragma once

#include <limits>
#include <numbers>

#include <Eigen/Core>

#include "twosr/geometry.hpp"

namespace twosr {

using ConfigMatrix = Eigen::Matrix<double, 4, 5>;

/// Default wheel saturation, rad/s.
inline constexpr double kDefaultOmegaMax = 4 * std::numbers::pi;

/// Velocity input (v1, v2, u0, v0, r0): tangential speeds of the two units in
/// the soft state, body twist in the rigid state. Only one group may be nonzero.
struct VelocityInput {
  double v1 = 0.0;
  double v2 = 0.0;
  double u0 = 0.0;
  double v0 = 0.0;
  double r0 = 0.0;

  Vector5d vector() const;
  static VelocityInput from_vector(const Vector5d& v);

  bool has_soft() const { return v1 != 0.0 || v2 != 0.0; }
  bool has_rigid() const { return u0 != 0.0 || v0 != 0.0 || r0 != 0.0; }

  friend bool operator==(const VelocityInput&, const VelocityInput&) = default;
};

/// Throws ContractError if `v` drives the group that `s` disables.
void check_exclusivity(const VelocityInput& v, const StiffnessState& s);

struct WheelSpeeds {
  Eigen::Vector4d omega = Eigen::Vector4d::Zero();  ///< rad/s
  bool saturated = false;                           ///< scaled down to respect the limit
  double scale = 1.0;                               ///< factor applied to the raw speeds
};

/// Unified 4x5 wheel configuration matrix; exactly one column block is active.
ConfigMatrix config_matrix(const AgentConfig& q, const StiffnessState& s,
                           const GeometryParams& geom);

/// omega = V * v, uniformly scaled (ratios kept) when any |omega_i| exceeds
/// `omega_max`. Pass infinity to disable saturation.
WheelSpeeds wheel_speeds(const VelocityInput& v, const ConfigMatrix& V,
                         double omega_max = kDefaultOmegaMax);

/// Least-squares velocity input from wheel speeds using the Moore-Penrose
/// pseudoinverse of the active column block. Throws SingularityError on rank loss.
VelocityInput body_twist_from_wheels(const Eigen::Vector4d& omega, const ConfigMatrix& V);

}  // namespace twosr
