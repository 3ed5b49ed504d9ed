#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "twosr/geometry.hpp"

namespace twosr {

/// Deformation modes of the soft fibre, each traced by its own logarithmic spiral.
///   I   one segment soft, the adjacent unit drives it;
///   II  one segment soft, the opposite unit drives it;
///   III both segments soft, bending equally.
enum class SpiralMode { I = 1, II = 2, III = 3 };

/// Constants of one spiral, normalised by the segment length l.
struct SpiralModel {
  SpiralMode mode;
  double a_over_l;
  double b_mag;
  double cx_over_l;
  double cy_over_l;
  double m;          ///< slope of the linear theta <-> kappa map
  double theta_min;  ///< admissible spiral angle range, rad
  double theta_max;

  int index() const { return static_cast<int>(mode); }
  /// Largest |kappa| reachable in this mode, 1/m.
  double kappa_bound(double l) const;
};

/// Fitted spiral constants for the prototype fibre.
const std::array<SpiralModel, 3>& spiral_table();
const SpiralModel& spiral(SpiralMode mode);

/// Point of rho = a exp(b theta) in the spiral-centre frame. `bend_sign`
/// (+1 or -1) is the sign of the curvature; b = -bend_sign * |b|.
Eigen::Vector2d spiral_point(const SpiralModel& model, double theta, double l, int bend_sign);

double kappa_from_theta(const SpiralModel& model, double theta, double l);
double theta_from_kappa(const SpiralModel& model, double kappa, double l);

struct RateCoeffs {
  double K;    ///< curvature rate per unit speed, 1/m^2
  double Phi;  ///< orientation rate per unit speed, 1/m (= l * K)
  double rho;  ///< spiral radius at the current curvature, m
};

/// Rate coefficients K = m / (l rho_k(kappa)) and Phi = m / rho_k(kappa).
/// rho_k decreases with bending on both sides of the straight fibre:
/// rho_k(kappa) = a exp(-|b| (|kappa l| / m + pi)).
RateCoeffs rate_coeffs(const SpiralModel& model, double kappa, double l);

/// Spiral constants recovered from arc geometry, expressed in the same
/// conventions as spiral_table().
struct SpiralFit {
  SpiralMode mode;
  double a_over_l;
  double b;  ///< signed; negative on the positive-curvature branch
  double cx_over_l;
  double cy_over_l;
  double rms_residual_over_l;
  double theta_start;  ///< spiral angle at the straight fibre
  double theta_end;    ///< spiral angle at the sweep end
  int iterations;
};

/// The radial fit residual exceeded RefitOptions::max_rms_over_l.
class OracleFailure : public std::runtime_error {
 public:
  OracleFailure(const std::string& what, double rms) : std::runtime_error(what), rms_(rms) {}
  double rms_over_l() const { return rms_; }

 private:
  double rms_;
};

struct RefitOptions {
  int n_samples = 200;
  double max_rms_over_l = 0.05;
  int max_iterations = 200;
};

/// Anchor-point path of the moving unit for `mode` over the positive-curvature
/// sweep, in the frame fixed to the stationary end of the bending chain
/// (x into the chain, y towards the bend). Units of metres.
std::vector<Eigen::Vector2d> mode_anchor_path(SpiralMode mode, const GeometryParams& geom,
                                              int n_samples);

/// Regenerates the spiral constants of `mode` by least-squares fitting the
/// anchor path. Throws OracleFailure when the fit is poor and DomainError when
/// n_samples < 50.
SpiralFit refit_oracle(SpiralMode mode, const GeometryParams& geom,
                       const RefitOptions& options = {});

/// Writes "mode,theta,x,y,kappa" rows sampling every spiral over its range.
void write_spiral_csv(std::ostream& out, double l, int samples_per_mode);

}  // namespace twosr
