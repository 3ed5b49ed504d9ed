#include "twosr/jacobian.hpp"

#include <cmath>
#include <numbers>

#include "twosr/errors.hpp"

namespace twosr {

namespace {

const SpiralModel& pick(const SpiralSet& spirals, SpiralMode mode) {
  return spirals[static_cast<std::size_t>(static_cast<int>(mode) - 1)];
}

// dF/dkappa_j by central difference of the frame chain.
Eigen::Vector2d f_point_derivative(const AgentConfig& q, SpiralMode k, int j,
                                   const GeometryParams& geom) {
  const double h = 1e-6 * geom.kappa_max();
  const double kappa = q.kappa(j);
  return (f_point_global(q, k, j, kappa + h, geom) - f_point_global(q, k, j, kappa - h, geom)) /
         (2 * h);
}

// Column for a unit that drives the body around the still unit at the end of
// segment j (modes II and III).
Eigen::Matrix<double, 5, 1> body_moving_column(const AgentConfig& q, SpiralMode k, int j,
                                               const RateCoeffs& rc, bool both_segments,
                                               const GeometryParams& geom) {
  Eigen::Matrix<double, 5, 1> col = Eigen::Matrix<double, 5, 1>::Zero();
  col.head<2>() = f_point_derivative(q, k, j, geom) * rc.K;
  col(2) = (j == 1 ? 1.0 : -1.0) * rc.Phi;
  if (both_segments) {
    col(3) = rc.K;
    col(4) = rc.K;
  } else {
    col(2 + j) = rc.K;
  }
  return col;
}

}  // namespace

Matrix5d HybridJacobian::matrix() const {
  Matrix5d J;
  J << Js, Jr;
  return J;
}

RigidBlock rigid_jacobian(const AgentConfig& q) {
  const double c = std::cos(q.phi);
  const double s = std::sin(q.phi);
  RigidBlock J = RigidBlock::Zero();
  J(0, 0) = c;
  J(0, 1) = -s;
  J(1, 0) = s;
  J(1, 1) = c;
  J(2, 2) = 1.0;
  return J;
}

Eigen::Vector2d f_point_global(const AgentConfig& q, SpiralMode k, int j, double kappa_j,
                               const GeometryParams& geom) {
  if (j != 1 && j != 2) {
    throw DomainError("segment index must be 1 or 2, got " + std::to_string(j));
  }
  if (k == SpiralMode::I) return {q.x, q.y};
  // The end frame of segment j stays where it is at the current configuration.
  const Pose2 still_end = body_pose(q) * cc_transform(q.kappa(j), j, geom);
  return still_end * (cc_transform_unchecked(kappa_j, j, geom).inverse() * Eigen::Vector2d::Zero());
}

Eigen::Vector2d f_point_global(const AgentConfig& q, SpiralMode k, int j,
                               const GeometryParams& geom) {
  const Eigen::Vector2d f = f_point_global(q, k, j, q.kappa(j), geom);
  const double gap = (f - Eigen::Vector2d(q.x, q.y)).norm();
  if (!(gap <= 1e-6)) {
    throw ConsistencyError("body-origin chain through segment " + std::to_string(j) +
                           " misses the body frame by " + std::to_string(gap) + " m");
  }
  return f;
}

SoftBlock soft_jacobian(const AgentConfig& q, const StiffnessState& s, const GeometryParams& geom,
                        const SpiralSet& spirals) {
  if (s.rigid()) {
    throw ContractError("soft Jacobian requested for a fully rigid fibre; use rigid_jacobian");
  }
  const double l = geom.l;
  SoftBlock Js = SoftBlock::Zero();
  if (s.s1 && s.s2) {
    // Both soft: either unit bends the whole fibre, curvatures change equally.
    const RateCoeffs rc2 = rate_coeffs(pick(spirals, SpiralMode::III), q.kappa2, l);
    const RateCoeffs rc1 = rate_coeffs(pick(spirals, SpiralMode::III), q.kappa1, l);
    Js.col(0) = body_moving_column(q, SpiralMode::III, 2, rc2, true, geom);
    Js.col(1) = body_moving_column(q, SpiralMode::III, 1, rc1, true, geom);
  } else if (s.s2) {
    // Segment 2 soft. LU1 sits beyond the rigid segment: it swings the body
    // around LU2. LU2 is adjacent: it bends segment 2 with the body still.
    Js.col(0) = body_moving_column(q, SpiralMode::II, 2,
                                   rate_coeffs(pick(spirals, SpiralMode::II), q.kappa2, l), false,
                                   geom);
    Js(4, 1) = rate_coeffs(pick(spirals, SpiralMode::I), q.kappa2, l).K;
  } else {
    Js(3, 0) = rate_coeffs(pick(spirals, SpiralMode::I), q.kappa1, l).K;
    Js.col(1) = body_moving_column(q, SpiralMode::II, 1,
                                   rate_coeffs(pick(spirals, SpiralMode::II), q.kappa1, l), false,
                                   geom);
  }
  return Js;
}

HybridJacobian hybrid_jacobian(const AgentConfig& q, const StiffnessState& s,
                               const GeometryParams& geom, const SpiralSet& spirals) {
  HybridJacobian J;
  J.s1 = !s.s1 && s.s2;
  J.s2 = s.s1 && !s.s2;
  J.s3 = s.s1 && s.s2;
  if (s.any_soft()) {
    J.Js = soft_jacobian(q, s, geom, spirals);
  } else {
    J.Jr = rigid_jacobian(q);
  }
  return J;
}

Vector5d config_rate(const AgentConfig& q, const StiffnessState& s, const Vector5d& v,
                     const GeometryParams& geom, const SpiralSet& spirals) {
  return hybrid_jacobian(q, s, geom, spirals).matrix() * v;
}

}  // namespace twosr
