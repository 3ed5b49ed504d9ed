#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twosr/errors.hpp"
#include "twosr/spiral.hpp"

using namespace twosr;
namespace o = twosr::oracle;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Spiral, TableConstants) {
  const auto& t = spiral_table();
  EXPECT_DOUBLE_EQ(t[0].a_over_l, 2.325);
  EXPECT_DOUBLE_EQ(t[0].b_mag, 0.3165);
  EXPECT_DOUBLE_EQ(t[1].a_over_l, 3.3041);
  EXPECT_DOUBLE_EQ(t[1].b_mag, 0.083);
  EXPECT_DOUBLE_EQ(t[2].a_over_l, 2.4471);
  EXPECT_DOUBLE_EQ(t[2].b_mag, 0.2229);
  EXPECT_EQ(spiral(SpiralMode::II).index(), 2);
}

TEST(Spiral, CurvatureBoundsPerMode) {
  const double l = 0.04;
  EXPECT_NEAR(spiral(SpiralMode::I).kappa_bound(l), 2 * kPi / l, 1e-12);
  EXPECT_NEAR(spiral(SpiralMode::II).kappa_bound(l), 2 * kPi / l, 1e-12);
  EXPECT_NEAR(spiral(SpiralMode::III).kappa_bound(l), kPi / l, 1e-12);
}

TEST(Spiral, ThetaCurvatureMapIsLinearAndInvertible) {
  const double l = 0.04;
  for (const auto& m : spiral_table()) {
    EXPECT_DOUBLE_EQ(theta_from_kappa(m, 0.0, l), kPi);
    EXPECT_NEAR(kappa_from_theta(m, m.theta_max, l), m.kappa_bound(l), 1e-9);
    EXPECT_NEAR(kappa_from_theta(m, m.theta_min, l), -m.kappa_bound(l), 1e-9);
    for (int i = -10; i <= 10; ++i) {
      const double k = m.kappa_bound(l) * i / 10.0;
      EXPECT_NEAR(kappa_from_theta(m, theta_from_kappa(m, k, l), l), k, 1e-9);
    }
    EXPECT_THROW(theta_from_kappa(m, 1.01 * m.kappa_bound(l), l), DomainError);
    EXPECT_THROW(kappa_from_theta(m, m.theta_max + 0.1, l), DomainError);
  }
}

TEST(Spiral, PointRadiusFollowsExponentialLaw) {
  const double l = 0.04;
  const auto& m = spiral(SpiralMode::I);
  for (double theta : {0.0, 1.0, kPi, 5.0}) {
    const Eigen::Vector2d p = spiral_point(m, theta, l, 1);
    EXPECT_NEAR(p.norm(), m.a_over_l * l * std::exp(-m.b_mag * theta), 1e-15);
    EXPECT_NEAR(std::atan2(p.y(), p.x()), std::remainder(theta, 2 * kPi), 1e-12);
    const Eigen::Vector2d q = spiral_point(m, theta, l, -1);
    EXPECT_NEAR(q.norm(), m.a_over_l * l * std::exp(m.b_mag * theta), 1e-15);
  }
}

TEST(Spiral, RateCoefficientsMatchIndependentFormula) {
  const double l = 0.04;
  for (int mode = 1; mode <= 3; ++mode) {
    const auto& m = spiral(static_cast<SpiralMode>(mode));
    for (int i = -20; i <= 20; ++i) {
      const double k = m.kappa_bound(l) * i / 20.0;
      const RateCoeffs rc = rate_coeffs(m, k, l);
      EXPECT_NEAR(rc.K / o::rate_K(mode, k, l), 1.0, 1e-13);
      EXPECT_NEAR(rc.Phi, l * rc.K, 1e-12 * rc.Phi);
      EXPECT_NEAR(rc.K, rate_coeffs(m, -k, l).K, 1e-12 * rc.K);
    }
  }
}

TEST(Spiral, RateGrowsWithBending) {
  const double l = 0.04;
  const auto& m = spiral(SpiralMode::I);
  double prev = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double K = rate_coeffs(m, m.kappa_bound(l) * i / 50.0, l).K;
    EXPECT_GT(K, prev);
    prev = K;
  }
}

TEST(Spiral, RateRejectsOutOfRange) {
  const double l = 0.04;
  EXPECT_THROW(rate_coeffs(spiral(SpiralMode::III), 1.1 * kPi / l, l), DomainError);
  EXPECT_NO_THROW(rate_coeffs(spiral(SpiralMode::I), 1.1 * kPi / l, l));
  EXPECT_THROW(rate_coeffs(spiral(SpiralMode::I), std::nan(""), l), DomainError);
}

TEST(Spiral, AnchorPathEndpoints) {
  const GeometryParams g;
  const int n = 101;
  const auto p1 = mode_anchor_path(SpiralMode::I, g, n);
  ASSERT_EQ(p1.size(), static_cast<std::size_t>(n));
  EXPECT_NEAR(p1.front().norm(), g.l, 1e-9);
  EXPECT_NEAR(p1.back().norm(), 0.0, 1e-9);  // full circle closes on the base
  const double span = 2 * g.l + g.l0;
  EXPECT_NEAR(mode_anchor_path(SpiralMode::II, g, n).front().norm(), span, 1e-9);
  EXPECT_NEAR(mode_anchor_path(SpiralMode::III, g, n).front().norm(), span, 1e-9);
}

TEST(Spiral, RefitModeOneDependsOnlyOnRatios) {
  GeometryParams g;
  const SpiralFit a = refit_oracle(SpiralMode::I, g);
  g.l = 0.37;
  const SpiralFit b = refit_oracle(SpiralMode::I, g);
  EXPECT_NEAR(a.a_over_l, b.a_over_l, 1e-7);
  EXPECT_NEAR(a.b, b.b, 1e-7);
  EXPECT_LT(a.b, 0.0);
  EXPECT_LT(a.rms_residual_over_l, 0.05);
}

TEST(Spiral, RefitTracksEachModel) {
  const GeometryParams g;
  for (int mode = 1; mode <= 3; ++mode) {
    const auto m = static_cast<SpiralMode>(mode);
    const SpiralFit fit = refit_oracle(m, g);
    EXPECT_EQ(fit.mode, m);
    EXPECT_NEAR(fit.a_over_l / spiral(m).a_over_l, 1.0, 0.05) << "mode " << mode;
    EXPECT_NEAR(std::abs(fit.b) / spiral(m).b_mag, 1.0, 0.05) << "mode " << mode;
    EXPECT_NEAR(fit.cx_over_l, spiral(m).cx_over_l, 0.02) << "mode " << mode;
    EXPECT_NEAR(fit.cy_over_l, spiral(m).cy_over_l, 0.02) << "mode " << mode;
  }
}

TEST(Spiral, RefitNeedsEnoughSamples) {
  RefitOptions opt;
  opt.n_samples = 49;
  EXPECT_THROW(refit_oracle(SpiralMode::I, GeometryParams{}, opt), DomainError);
}

TEST(Spiral, RefitReportsPoorFit) {
  RefitOptions opt;
  opt.max_rms_over_l = 1e-9;
  EXPECT_THROW(refit_oracle(SpiralMode::II, GeometryParams{}, opt), OracleFailure);
}

TEST(Spiral, CsvExport) {
  std::ostringstream out;
  write_spiral_csv(out, 0.04, 10);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# twosr ", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "mode,theta,x,y,kappa");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 30);
}
