#pragma once

#include <array>

#include <Eigen/Core>

#include "twosr/geometry.hpp"
#include "twosr/spiral.hpp"

namespace twosr {

using Matrix5d = Eigen::Matrix<double, 5, 5>;
using SoftBlock = Eigen::Matrix<double, 5, 2>;
using RigidBlock = Eigen::Matrix<double, 5, 3>;
using SpiralSet = std::array<SpiralModel, 3>;

/// q_dot = J * v with J = [Js | Jr]. Only the block matching the stiffness
/// state is nonzero.
struct HybridJacobian {
  SoftBlock Js = SoftBlock::Zero();
  RigidBlock Jr = RigidBlock::Zero();
  bool s1 = false;  ///< only segment 2 soft
  bool s2 = false;  ///< only segment 1 soft
  bool s3 = false;  ///< both soft

  Matrix5d matrix() const;
};

/// Body twist (u0, v0, r0) to q_dot: planar rotation by phi, curvature rows zero.
RigidBlock rigid_jacobian(const AgentConfig& q);

/// Global position of the body origin reached through the fixed end of
/// segment j while that segment bends to `kappa_j`, holding the unit at the
/// end of segment j still. For mode I the body itself is still and the
/// result is (q.x, q.y) for any kappa_j.
Eigen::Vector2d f_point_global(const AgentConfig& q, SpiralMode k, int j, double kappa_j,
                               const GeometryParams& geom);

/// Same at the current curvature; must return (q.x, q.y). Throws
/// ConsistencyError when the chain does not close to 1e-6.
Eigen::Vector2d f_point_global(const AgentConfig& q, SpiralMode k, int j,
                               const GeometryParams& geom);

/// Soft-state block. Column 1 maps v1, column 2 maps v2. Throws ContractError
/// for the fully rigid state and DomainError if a curvature leaves the
/// active spiral's range.
SoftBlock soft_jacobian(const AgentConfig& q, const StiffnessState& s, const GeometryParams& geom,
                        const SpiralSet& spirals = spiral_table());

HybridJacobian hybrid_jacobian(const AgentConfig& q, const StiffnessState& s,
                               const GeometryParams& geom,
                               const SpiralSet& spirals = spiral_table());

/// Convenience: q_dot for a given velocity input.
Vector5d config_rate(const AgentConfig& q, const StiffnessState& s, const Vector5d& v,
                     const GeometryParams& geom, const SpiralSet& spirals = spiral_table());

}  // namespace twosr
