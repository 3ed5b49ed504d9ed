#include "twosr/geometry.hpp"

#include <cmath>
#include <string>

#include "twosr/errors.hpp"

namespace twosr {

Vector5d AgentConfig::vector() const {
  Vector5d v;
  v << x, y, phi, kappa1, kappa2;
  return v;
}

AgentConfig AgentConfig::from_vector(const Vector5d& v) {
  return AgentConfig{v(0), v(1), v(2), v(3), v(4)};
}

StiffnessState StiffnessState::from_index(int index) {
  if (index < 0 || index > 3) {
    throw DomainError("stiffness index must be in [0, 3], got " + std::to_string(index));
  }
  return kAllStiffnessStates[static_cast<std::size_t>(index)];
}

void GeometryParams::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"rho_w", rho_w}, {"a", a}, {"d", d}, {"l1", l1}, {"l0", l0}, {"l", l}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value) || value <= 0.0) {
      throw DomainError(std::string("geometry length '") + name +
                        "' must be strictly positive, got " + std::to_string(value));
    }
  }
}

GeometryParams GeometryParams::scaled(double factor) const {
  GeometryParams g = *this;
  g.rho_w *= factor;
  g.a *= factor;
  g.d *= factor;
  g.l1 *= factor;
  g.l0 *= factor;
  g.l *= factor;
  return g;
}

Pose2::Pose2(double x, double y, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  m_ << c, -s, x, s, c, y, 0, 0, 1;
}

double Pose2::angle() const { return std::atan2(m_(1, 0), m_(0, 0)); }

Pose2 Pose2::inverse() const {
  Eigen::Matrix3d inv = Eigen::Matrix3d::Identity();
  const Eigen::Matrix2d rt = rotation().transpose();
  inv.topLeftCorner<2, 2>() = rt;
  inv.topRightCorner<2, 1>() = -rt * translation();
  return Pose2(inv);
}

Pose2 cc_transform_unchecked(double kappa, int segment, const GeometryParams& geom) {
  const double alpha = kappa * geom.l;
  double along;   // sin(alpha) / kappa
  double across;  // (1 - cos(alpha)) / kappa
  if (std::abs(alpha) < kSeriesThreshold) {
    const double a2 = alpha * alpha;
    along = geom.l * (1.0 - a2 / 6.0);
    across = geom.l * alpha * (0.5 - a2 / 24.0);
  } else {
    const double half = std::sin(alpha / 2);
    along = std::sin(alpha) / kappa;
    across = 2.0 * half * half / kappa;
  }
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  // Upper sign for segment 1, lower for segment 2.
  const double sign = segment == 1 ? 1.0 : -1.0;
  Eigen::Matrix3d m;
  m << c, sign * s, -sign * (geom.l0 / 2 + along),
       -sign * s, c, across,
       0, 0, 1;
  return Pose2(m);
}

Pose2 cc_transform(double kappa, int segment, const GeometryParams& geom) {
  if (segment != 1 && segment != 2) {
    throw DomainError("segment index must be 1 or 2, got " + std::to_string(segment));
  }
  if (!std::isfinite(kappa) || std::abs(kappa) > geom.kappa_max() * (1 + 1e-12)) {
    throw DomainError("curvature of segment " + std::to_string(segment) + " (" +
                      std::to_string(kappa) + " 1/m) exceeds the full-circle bound " +
                      std::to_string(geom.kappa_max()) + " 1/m");
  }
  return cc_transform_unchecked(kappa, segment, geom);
}

std::array<WheelPose, 4> wheel_positions_body(const AgentConfig& q,
                                              const GeometryParams& geom) {
  const double h1 = geom.h1();
  const double h2 = geom.h2();
  const double h3 = geom.h3();
  // Wheel coordinates in their segment end frame.
  const std::array<Eigen::Vector2d, 4> local{Eigen::Vector2d(-h1, 0), Eigen::Vector2d(-h2, h3),
                                             Eigen::Vector2d(h1, 0), Eigen::Vector2d(h2, -h3)};
  const Pose2 t1 = cc_transform(q.kappa1, 1, geom);
  const Pose2 t2 = cc_transform(q.kappa2, 2, geom);
  const double alpha1 = q.kappa1 * geom.l;
  const double alpha2 = q.kappa2 * geom.l;

  std::array<WheelPose, 4> wheels{};
  for (std::size_t i = 0; i < 4; ++i) {
    const bool first = i < 2;
    const Eigen::Vector2d p = (first ? t1 : t2) * local[i];
    const double psi = (first ? -alpha1 : alpha2) + GeometryParams::beta[i];
    wheels[i] = WheelPose{p.x(), p.y(), psi};
  }
  return wheels;
}

Pose2 body_pose(const AgentConfig& q) { return Pose2(q.x, q.y, q.phi); }

double wrap_angle(double angle) {
  double w = std::remainder(angle, 2 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2 * std::numbers::pi;
  return w;
}

}  // namespace twosr
