#include "twosr/spiral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <Eigen/Dense>

#include "twosr/csv.hpp"
#include "twosr/errors.hpp"

namespace twosr {

namespace {

constexpr double kPi = std::numbers::pi;

// Prototype fit constants. Angle ranges follow the linear theta <-> kappa maps.
const std::array<SpiralModel, 3> kTable{{
    {SpiralMode::I, 2.325, 0.3165, -0.1223, 0.1782, 1.5, -kPi / 3, 7 * kPi / 3},
    {SpiralMode::II, 3.3041, 0.083, 0.1988, 0.1640, 1.0, -kPi, 3 * kPi},
    {SpiralMode::III, 2.4471, 0.2229, -0.2722, 0.3949, 0.75, -kPi / 3, 7 * kPi / 3},
}};

// How each row of the table reports its centre and scale relative to the
// frame used by mode_anchor_path: sign of the centre x coordinate, and the
// offset between the spiral angle and the polar angle about the centre.
struct ReportingConvention {
  double x_sign;
  double theta_shift;
};

ReportingConvention convention(SpiralMode mode) {
  switch (mode) {
    case SpiralMode::I:
      return {-1.0, kPi};
    case SpiralMode::II:
      return {1.0, kPi};
    case SpiralMode::III:
      return {-1.0, 0.0};
  }
  return {1.0, 0.0};
}

void check_theta(const SpiralModel& model, double theta) {
  const double tol = 1e-12 * (model.theta_max - model.theta_min);
  if (!std::isfinite(theta) || theta < model.theta_min - tol || theta > model.theta_max + tol) {
    throw DomainError("spiral angle " + std::to_string(theta) + " outside the range of mode " +
                      std::to_string(model.index()));
  }
}

}  // namespace

double SpiralModel::kappa_bound(double l) const { return m * (theta_max - kPi) / l; }

const std::array<SpiralModel, 3>& spiral_table() { return kTable; }

const SpiralModel& spiral(SpiralMode mode) {
  return kTable[static_cast<std::size_t>(static_cast<int>(mode) - 1)];
}

Eigen::Vector2d spiral_point(const SpiralModel& model, double theta, double l, int bend_sign) {
  check_theta(model, theta);
  const double b = bend_sign >= 0 ? -model.b_mag : model.b_mag;
  const double rho = model.a_over_l * l * std::exp(b * theta);
  return {rho * std::cos(theta), rho * std::sin(theta)};
}

double kappa_from_theta(const SpiralModel& model, double theta, double l) {
  check_theta(model, theta);
  return model.m * (theta - kPi) / l;
}

double theta_from_kappa(const SpiralModel& model, double kappa, double l) {
  const double bound = model.kappa_bound(l);
  if (!std::isfinite(kappa) || std::abs(kappa) > bound * (1 + 1e-12)) {
    throw DomainError("curvature " + std::to_string(kappa) + " outside the range of mode " +
                      std::to_string(model.index()));
  }
  return kappa * l / model.m + kPi;
}

RateCoeffs rate_coeffs(const SpiralModel& model, double kappa, double l) {
  const double bound = model.kappa_bound(l);
  if (!std::isfinite(kappa) || std::abs(kappa) > bound * (1 + 1e-9)) {
    throw DomainError("curvature " + std::to_string(kappa) + " outside the range of mode " +
                      std::to_string(model.index()));
  }
  const double alpha = std::abs(kappa) * l;
  const double rho = model.a_over_l * l * std::exp(-model.b_mag * (alpha / model.m + kPi));
  const double K = model.m / (l * rho);
  return RateCoeffs{K, model.m / rho, rho};
}

std::vector<Eigen::Vector2d> mode_anchor_path(SpiralMode mode, const GeometryParams& geom,
                                              int n_samples) {
  const double bound = spiral(mode).kappa_bound(geom.l);
  std::vector<Eigen::Vector2d> path;
  path.reserve(static_cast<std::size_t>(n_samples));
  const Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  for (int i = 0; i < n_samples; ++i) {
    // Starts just off the straight fibre so the sweep stays on one branch.
    const double frac = 1e-6 + (1.0 - 1e-6) * i / (n_samples - 1);
    const double kappa = bound * frac;
    Eigen::Vector2d p;
    switch (mode) {
      case SpiralMode::I: {
        // Body and LU1 still; tip of segment 2 seen from its base.
        p = cc_transform(kappa, 2, geom).translation() - Eigen::Vector2d(geom.l0 / 2, 0);
        break;
      }
      case SpiralMode::II: {
        // LU2 still; far end of the straight rigid segment 1 seen from the end of segment 2.
        const Pose2 t1 = cc_transform(0.0, 1, geom);
        const Pose2 t2 = cc_transform(kappa, 2, geom);
        const Eigen::Vector2d in_b2 = t2.inverse() * (t1 * origin);
        p = Eigen::Vector2d(-in_b2.x(), in_b2.y());
        break;
      }
      case SpiralMode::III: {
        // LU1 still; both segments share the curvature.
        const Pose2 t1 = cc_transform(kappa, 1, geom);
        const Pose2 t2 = cc_transform(kappa, 2, geom);
        p = t1.inverse() * (t2 * origin);
        break;
      }
    }
    path.push_back(p);
  }
  return path;
}

namespace {

struct NativeFit {
  Eigen::Vector4d params;  // cx, cy, ln a, b (lengths in units of l)
  double cost;
  int iterations;
};

// Polar angles about `c`, unwrapped along the sample order.
Eigen::VectorXd unwrapped_angles(const std::vector<Eigen::Vector2d>& pts, const Eigen::Vector2d& c) {
  Eigen::VectorXd phi(static_cast<Eigen::Index>(pts.size()));
  double prev = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Eigen::Vector2d d = pts[i] - c;
    double a = std::atan2(d.y(), d.x());
    if (i > 0) {
      a = prev + std::remainder(a - prev, 2 * kPi);
    }
    phi(static_cast<Eigen::Index>(i)) = a;
    prev = a;
  }
  return phi;
}

double residuals(const std::vector<Eigen::Vector2d>& pts, const Eigen::Vector4d& p,
                 Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
  const Eigen::Vector2d c(p(0), p(1));
  const Eigen::VectorXd phi = unwrapped_angles(pts, c);
  const auto n = static_cast<Eigen::Index>(pts.size());
  r.resize(n);
  if (jac) jac->resize(n, 4);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector2d d = pts[static_cast<std::size_t>(i)] - c;
    const double dist = d.norm();
    const double model = std::exp(p(2) + p(3) * phi(i));
    r(i) = dist - model;
    if (jac) {
      const double r2 = dist * dist;
      const double dphi_dcx = d.y() / r2;
      const double dphi_dcy = -d.x() / r2;
      (*jac)(i, 0) = -d.x() / dist - model * p(3) * dphi_dcx;
      (*jac)(i, 1) = -d.y() / dist - model * p(3) * dphi_dcy;
      (*jac)(i, 2) = -model;
      (*jac)(i, 3) = -model * phi(i);
    }
  }
  return 0.5 * r.squaredNorm();
}

// Algebraic circle fit; a spiral arc of a few hundred degrees keeps its
// centre close to the best circle's.
Eigen::Vector2d circle_center(const std::vector<Eigen::Vector2d>& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& q = pts[static_cast<std::size_t>(i)];
    A(i, 0) = q.x();
    A(i, 1) = q.y();
    A(i, 2) = 1.0;
    rhs(i) = -(q.x() * q.x() + q.y() * q.y());
  }
  const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(rhs);
  return {-sol(0) / 2, -sol(1) / 2};
}

// Straight-line fit of ln(rho) against the polar angle about `c`.
Eigen::Vector4d log_linear_guess(const std::vector<Eigen::Vector2d>& pts, const Eigen::Vector2d& c) {
  const Eigen::VectorXd phi = unwrapped_angles(pts, c);
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = phi(i);
    y(i) = std::log((pts[static_cast<std::size_t>(i)] - c).norm());
  }
  const Eigen::Vector2d ab = A.colPivHouseholderQr().solve(y);
  return {c.x(), c.y(), ab(0), ab(1)};
}

NativeFit levenberg_marquardt(const std::vector<Eigen::Vector2d>& pts, Eigen::Vector4d p,
                              int max_iterations) {
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  double cost = residuals(pts, p, r, &J);
  double mu = 1e-3;
  int it = 0;
  for (; it < max_iterations; ++it) {
    const Eigen::Matrix4d JtJ = J.transpose() * J;
    const Eigen::Vector4d g = J.transpose() * r;
    if (g.cwiseAbs().maxCoeff() < 1e-14) break;
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      Eigen::Matrix4d H = JtJ;
      H.diagonal() += mu * JtJ.diagonal().cwiseMax(1e-12);
      const Eigen::Vector4d step = H.ldlt().solve(-g);
      const Eigen::Vector4d trial = p + step;
      Eigen::VectorXd r_trial;
      Eigen::MatrixXd J_trial;
      const double c_trial = residuals(pts, trial, r_trial, &J_trial);
      if (std::isfinite(c_trial) && c_trial < cost) {
        const double rel = (cost - c_trial) / std::max(cost, 1e-300);
        p = trial;
        r = std::move(r_trial);
        J = std::move(J_trial);
        cost = c_trial;
        mu = std::max(mu / 3, 1e-12);
        accepted = true;
        if (rel < 1e-15 || step.norm() < 1e-14) return {p, cost, it + 1};
      } else {
        mu *= 4;
      }
    }
    if (!accepted) break;
  }
  return {p, cost, it};
}

}  // namespace

SpiralFit refit_oracle(SpiralMode mode, const GeometryParams& geom, const RefitOptions& options) {
  if (options.n_samples < 50) {
    throw DomainError("refit needs at least 50 samples, got " + std::to_string(options.n_samples));
  }
  geom.validate();
  auto pts = mode_anchor_path(mode, geom, options.n_samples);
  for (auto& q : pts) q /= geom.l;

  const Eigen::Vector2d circle = circle_center(pts);
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  for (const auto& q : pts) centroid += q;
  centroid /= static_cast<double>(pts.size());

  NativeFit best{Eigen::Vector4d::Zero(), std::numeric_limits<double>::infinity(), 0};
  for (const Eigen::Vector2d& c0 : {circle, centroid, Eigen::Vector2d(0.5 * (circle + centroid))}) {
    const NativeFit fit = levenberg_marquardt(pts, log_linear_guess(pts, c0), options.max_iterations);
    if (fit.cost < best.cost) best = fit;
  }

  const double rms = std::sqrt(2 * best.cost / static_cast<double>(pts.size()));
  if (!std::isfinite(rms) || rms > options.max_rms_over_l) {
    throw OracleFailure("spiral refit of mode " + std::to_string(static_cast<int>(mode)) +
                            " failed: rms residual " + std::to_string(rms) + " l",
                        rms);
  }

  const ReportingConvention conv = convention(mode);
  const Eigen::VectorXd phi = unwrapped_angles(pts, best.params.head<2>());
  const double b = best.params(3);
  SpiralFit out{};
  out.mode = mode;
  out.b = b;
  out.a_over_l = std::exp(best.params(2) - b * conv.theta_shift);
  out.cx_over_l = conv.x_sign * best.params(0);
  out.cy_over_l = best.params(1);
  out.rms_residual_over_l = rms;
  out.theta_start = phi(0) + conv.theta_shift;
  out.theta_end = phi(phi.size() - 1) + conv.theta_shift;
  out.iterations = best.iterations;
  return out;
}

void write_spiral_csv(std::ostream& out, double l, int samples_per_mode) {
  write_csv_header(out, "spiral", {"mode", "theta", "x", "y", "kappa"});
  for (const auto& model : kTable) {
    for (int i = 0; i < samples_per_mode; ++i) {
      const double theta =
          model.theta_min + (model.theta_max - model.theta_min) * i / (samples_per_mode - 1);
      const double kappa = kappa_from_theta(model, theta, l);
      const Eigen::Vector2d p = spiral_point(model, theta, l, kappa < 0 ? -1 : 1);
      write_csv_row(out, {static_cast<double>(model.index()), theta, p.x(), p.y(), kappa});
    }
  }
}

}  // namespace twosr
