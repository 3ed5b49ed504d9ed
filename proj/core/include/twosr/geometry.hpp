#pragma once

#include <array>
#include <numbers>

#include <Eigen/Core>

namespace twosr {

using Vector5d = Eigen::Matrix<double, 5, 1>;

/// Generalised coordinates of the agent: planar pose of the body frame
/// (middle of the middle link) and the signed curvature of both segments.
struct AgentConfig {
  double x = 0.0;       ///< m
  double y = 0.0;       ///< m
  double phi = 0.0;     ///< rad, stored unwrapped
  double kappa1 = 0.0;  ///< 1/m
  double kappa2 = 0.0;  ///< 1/m

  Vector5d vector() const;
  static AgentConfig from_vector(const Vector5d& v);

  double kappa(int segment) const { return segment == 1 ? kappa1 : kappa2; }

  friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

/// Per-segment stiffness flags; true means the alloy is molten (soft).
struct StiffnessState {
  bool s1 = false;
  bool s2 = false;

  /// Any segment soft.
  bool any_soft() const { return s1 || s2; }
  bool rigid() const { return !any_soft(); }

  /// Position in the canonical ordering {00, 01, 10, 11}.
  int index() const { return (s1 ? 2 : 0) + (s2 ? 1 : 0); }
  static StiffnessState from_index(int index);

  friend bool operator==(const StiffnessState&, const StiffnessState&) = default;
};

inline constexpr std::array<StiffnessState, 4> kAllStiffnessStates{
    StiffnessState{false, false}, StiffnessState{false, true},
    StiffnessState{true, false}, StiffnessState{true, true}};

/// Physical dimensions of the agent. Defaults are the prototype's.
struct GeometryParams {
  double rho_w = 0.01;  ///< wheel radius
  double a = 0.046;     ///< locomotion unit block side
  double d = 0.01;      ///< wheel thickness
  double l1 = 0.03;     ///< end plastic link
  double l0 = 0.03;     ///< middle plastic link
  double l = 0.04;      ///< variable-stiffness segment arc length

  static constexpr std::array<double, 4> beta{
      std::numbers::pi / 2, 0.0, -std::numbers::pi / 2, std::numbers::pi};

  double h1() const { return (2 * l1 + 2 * a + d) / 2; }
  double h2() const { return (2 * l1 + a) / 2; }
  double h3() const { return (a + d) / 2; }

  /// Full-circle curvature bound 2*pi/l.
  double kappa_max() const { return 2 * std::numbers::pi / l; }

  /// Throws DomainError unless every length is strictly positive and finite.
  void validate() const;

  /// All lengths multiplied by `factor`.
  GeometryParams scaled(double factor) const;
};

/// Rigid planar transform stored as a 3x3 homogeneous matrix.
class Pose2 {
 public:
  Pose2() : m_(Eigen::Matrix3d::Identity()) {}
  Pose2(double x, double y, double angle);
  explicit Pose2(const Eigen::Matrix3d& m) : m_(m) {}

  const Eigen::Matrix3d& matrix() const { return m_; }
  Eigen::Matrix2d rotation() const { return m_.topLeftCorner<2, 2>(); }
  Eigen::Vector2d translation() const { return m_.topRightCorner<2, 1>(); }
  double angle() const;

  Pose2 operator*(const Pose2& rhs) const { return Pose2(Eigen::Matrix3d(m_ * rhs.m_)); }
  Eigen::Vector2d operator*(const Eigen::Vector2d& p) const {
    return rotation() * p + translation();
  }
  Pose2 inverse() const;

 private:
  Eigen::Matrix3d m_;
};

/// Below this |kappa * l| the arc transform switches to its Taylor series.
inline constexpr double kSeriesThreshold = 1e-6;

/// Transform from the body frame {b0} to the end frame {bj} of segment j
/// under the constant-curvature assumption. Segment 1 extends towards -x,
/// segment 2 towards +x; positive curvature bends both towards +y.
/// Throws DomainError naming the segment if |kappa| > 2*pi/l.
Pose2 cc_transform(double kappa, int segment, const GeometryParams& geom);

/// Same closed form without the range check; used where a finite-difference
/// stencil may straddle the bound by a few ulps.
Pose2 cc_transform_unchecked(double kappa, int segment, const GeometryParams& geom);

struct WheelPose {
  double x;    ///< in {b0}, m
  double y;    ///< in {b0}, m
  double psi;  ///< wheel-frame angle relative to {b0}, rad
};

/// Wheel poses in the body frame. Wheels 1-2 ride on LU1 (segment 1 end),
/// wheels 3-4 on LU2. Add q.phi to psi for the global wheel heading.
std::array<WheelPose, 4> wheel_positions_body(const AgentConfig& q,
                                              const GeometryParams& geom);

/// Global pose of the body frame.
Pose2 body_pose(const AgentConfig& q);

/// Angle wrapped into (-pi, pi].
double wrap_angle(double angle);

}  // namespace twosr
