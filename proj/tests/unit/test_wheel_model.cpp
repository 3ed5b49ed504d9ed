#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twosr/errors.hpp"
#include "twosr/wheel_model.hpp"

using namespace twosr;
namespace o = twosr::oracle;

TEST(WheelModel, RigidRowsMatchContactPointKinematics) {
  const GeometryParams g;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const AgentConfig q = random_config(rng, g);
    const ConfigMatrix V = config_matrix(q, {}, g);
    const double u = o::uniform(rng, -0.1, 0.1), v = o::uniform(rng, -0.1, 0.1),
                 r = o::uniform(rng, -1, 1);
    const auto w = wheel_positions_body(q, g);
    const Eigen::Vector4d omega = V * VelocityInput{0, 0, u, v, r}.vector();
    for (std::size_t i = 0; i < 4; ++i) {
      // Velocity of the wheel centre in {b0}, projected on the rolling direction.
      const double vx = u - r * w[i].y;
      const double vy = v + r * w[i].x;
      const double expected = (std::cos(w[i].psi) * vx + std::sin(w[i].psi) * vy) / g.rho_w;
      EXPECT_NEAR(omega(static_cast<int>(i)), expected, 1e-12);
    }
  }
}

TEST(WheelModel, SoftBlockDrivesOneWheelPerUnit) {
  const GeometryParams g;
  const ConfigMatrix V = config_matrix(AgentConfig{}, {true, false}, g);
  EXPECT_DOUBLE_EQ(V(0, 0), 1 / g.rho_w);
  EXPECT_DOUBLE_EQ(V(2, 1), -1 / g.rho_w);
  EXPECT_EQ(V.rightCols<3>().norm(), 0.0);
  EXPECT_EQ(V(1, 0), 0.0);
  EXPECT_EQ(V(3, 1), 0.0);
}

TEST(WheelModel, ExclusivityIsEnforced) {
  EXPECT_THROW(check_exclusivity({0.01, 0, 0.1, 0, 0}, {true, true}), ContractError);
  EXPECT_THROW(check_exclusivity({0, 0, 0.1, 0, 0}, {false, true}), ContractError);
  EXPECT_THROW(check_exclusivity({0.01, 0, 0, 0, 0}, {}), ContractError);
  EXPECT_NO_THROW(check_exclusivity({0, 0, 0.1, 0, 0.2}, {}));
  EXPECT_NO_THROW(check_exclusivity({0.01, -0.02, 0, 0, 0}, {true, false}));
  EXPECT_NO_THROW(check_exclusivity({}, {true, true}));
}

TEST(WheelModel, SaturationKeepsRatios) {
  const GeometryParams g;
  const AgentConfig q{0, 0, 0, 30, -60};
  const ConfigMatrix V = config_matrix(q, {}, g);
  const VelocityInput v{0, 0, 0.5, -0.2, 3.0};
  const WheelSpeeds raw = wheel_speeds(v, V, std::numeric_limits<double>::infinity());
  EXPECT_FALSE(raw.saturated);
  const WheelSpeeds sat = wheel_speeds(v, V, 2.0);
  ASSERT_TRUE(sat.saturated);
  EXPECT_NEAR(sat.omega.cwiseAbs().maxCoeff(), 2.0, 1e-12);
  EXPECT_TRUE(sat.omega.isApprox(raw.omega * sat.scale, 1e-14));
  EXPECT_LT(sat.scale, 1.0);
}

TEST(WheelModel, DefaultCeiling) {
  const GeometryParams g;
  const ConfigMatrix V = config_matrix(AgentConfig{}, {}, g);
  const WheelSpeeds w = wheel_speeds({0, 0, 1.0, 0, 0}, V);
  EXPECT_TRUE(w.saturated);
  EXPECT_NEAR(w.omega.cwiseAbs().maxCoeff(), kDefaultOmegaMax, 1e-12);
}

TEST(WheelModel, PseudoinverseRecoversInput) {
  const GeometryParams g;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const AgentConfig q = random_config(rng, g);
    const VelocityInput rigid{0, 0, o::uniform(rng, -0.1, 0.1), o::uniform(rng, -0.1, 0.1),
                              o::uniform(rng, -1, 1)};
    const ConfigMatrix Vr = config_matrix(q, {}, g);
    const VelocityInput back = body_twist_from_wheels(Vr * rigid.vector(), Vr);
    EXPECT_LT((back.vector() - rigid.vector()).norm(), 1e-12);

    const VelocityInput soft{o::uniform(rng, -0.02, 0.02), o::uniform(rng, -0.02, 0.02), 0, 0, 0};
    const ConfigMatrix Vs = config_matrix(q, {false, true}, g);
    const VelocityInput back_s = body_twist_from_wheels(Vs * soft.vector(), Vs);
    EXPECT_LT((back_s.vector() - soft.vector()).norm(), 1e-14);
  }
}

TEST(WheelModel, RankLossIsReported) {
  ConfigMatrix V = ConfigMatrix::Zero();
  V.col(2) << 1, 1, 1, 1;
  V.col(3) << 2, 2, 2, 2;
  V.col(4) << 0, 1, 0, 1;
  EXPECT_THROW(body_twist_from_wheels(Eigen::Vector4d::Ones(), V), SingularityError);
}
