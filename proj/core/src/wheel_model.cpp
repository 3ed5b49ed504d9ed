#include "twosr/wheel_model.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "twosr/errors.hpp"

namespace twosr {

Vector5d VelocityInput::vector() const {
  Vector5d out;
  out << v1, v2, u0, v0, r0;
  return out;
}

VelocityInput VelocityInput::from_vector(const Vector5d& v) {
  return VelocityInput{v(0), v(1), v(2), v(3), v(4)};
}

void check_exclusivity(const VelocityInput& v, const StiffnessState& s) {
  if (s.any_soft() && v.has_rigid()) {
    throw ContractError("rigid-body twist (u0, v0, r0) commanded while a segment is soft");
  }
  if (s.rigid() && v.has_soft()) {
    throw ContractError("unit speeds (v1, v2) commanded while the fibre is rigid");
  }
}

ConfigMatrix config_matrix(const AgentConfig& q, const StiffnessState& s,
                           const GeometryParams& geom) {
  ConfigMatrix V = ConfigMatrix::Zero();
  if (s.any_soft()) {
    // Only the wheels tangential to the bending path drive the fibre.
    V(0, 0) = 1.0;
    V(2, 1) = -1.0;
  } else {
    const auto wheels = wheel_positions_body(q, geom);
    for (int i = 0; i < 4; ++i) {
      const auto& w = wheels[static_cast<std::size_t>(i)];
      const double c = std::cos(w.psi);
      const double sn = std::sin(w.psi);
      V(i, 2) = c;
      V(i, 3) = sn;
      V(i, 4) = w.x * sn - w.y * c;
    }
  }
  return V / geom.rho_w;
}

WheelSpeeds wheel_speeds(const VelocityInput& v, const ConfigMatrix& V, double omega_max) {
  WheelSpeeds out;
  out.omega = V * v.vector();
  const double peak = out.omega.cwiseAbs().maxCoeff();
  if (peak > omega_max) {
    out.scale = omega_max / peak;
    out.omega *= out.scale;
    out.saturated = true;
  }
  return out;
}

namespace {

template <int Cols>
Eigen::Matrix<double, Cols, 1> pinv_solve(const Eigen::Matrix<double, 4, Cols>& block,
                                          const Eigen::Vector4d& omega, const char* mode) {
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, Cols>> svd(block,
                                                       Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0 || sv(Cols - 1) / sv(0) < 1e-10) {
    throw SingularityError(std::string("configuration matrix lost rank in ") + mode +
                           " mode");
  }
  Eigen::Matrix<double, Cols, 1> inv_sv = sv.cwiseInverse();
  return svd.matrixV() * inv_sv.asDiagonal() *
         svd.matrixU().leftCols(Cols).transpose() * omega;
}

}  // namespace

VelocityInput body_twist_from_wheels(const Eigen::Vector4d& omega, const ConfigMatrix& V) {
  const bool soft = !V.leftCols<2>().isZero(0.0);
  Vector5d out = Vector5d::Zero();
  if (soft) {
    out.head<2>() = pinv_solve<2>(V.leftCols<2>(), omega, "soft");
  } else {
    out.tail<3>() = pinv_solve<3>(V.rightCols<3>(), omega, "rigid");
  }
  return VelocityInput::from_vector(out);
}

}  // namespace twosr
