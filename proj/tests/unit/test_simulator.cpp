#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twosr/errors.hpp"
#include "twosr/simulator.hpp"

using namespace twosr;
namespace o = twosr::oracle;

namespace {

AgentConfig integrate(AgentConfig q, const StiffnessState& s, const VelocityInput& v, double T,
                      int steps, Integrator integ, const GeometryParams& g) {
  const double dt = T / steps;
  for (int i = 0; i < steps; ++i) q = fk_step(q, s, v, dt, g, integ).q;
  return q;
}

PlanResult single_run_plan(const StiffnessState& s, const VelocityInput& v, int steps) {
  PlanResult p;
  p.dt = 0.05;
  p.stiffness_schedule.assign(static_cast<std::size_t>(steps), s);
  p.velocity_schedule.assign(static_cast<std::size_t>(steps), v);
  return p;
}

}  // namespace

TEST(Simulator, ZeroInputLeavesConfiguration) {
  const GeometryParams g;
  const AgentConfig q{0.1, 0.2, 0.3, 40, -40};
  for (const auto& s : kAllStiffnessStates) {
    EXPECT_EQ(fk_step(q, s, {}, 0.05, g).q, q);
  }
}

TEST(Simulator, RigidTranslationIsExact) {
  const GeometryParams g;
  const AgentConfig q{0.1, 0.2, 0.0, 10, 20};
  const StepResult r = fk_step(q, {}, {0, 0, 0.04, 0, 0}, 0.05, g);
  EXPECT_DOUBLE_EQ(r.q.x, 0.1 + 0.04 * 0.05);
  EXPECT_EQ(r.q.y, 0.2);
  EXPECT_EQ(r.q.phi, 0.0);
  EXPECT_FALSE(r.curvature_saturated);
}

TEST(Simulator, EulerIsFirstOrder) {
  const GeometryParams g;
  const AgentConfig q0{0, 0, 0.2, 30, -60};
  const StiffnessState s{false, true};
  const VelocityInput v{0.004, 0.002, 0, 0, 0};
  const double T = 1.0;
  const AgentConfig ref = integrate(q0, s, v, T, 2000, Integrator::Euler, g);
  const double e1 = (integrate(q0, s, v, T, 20, Integrator::Euler, g).vector() - ref.vector()).norm();
  const double e2 = (integrate(q0, s, v, T, 40, Integrator::Euler, g).vector() - ref.vector()).norm();
  EXPECT_NEAR(e1 / e2, 2.0, 0.25);
}

TEST(Simulator, RungeKuttaIsMoreAccurate) {
  const GeometryParams g;
  const AgentConfig q0{0, 0, 0.2, 30, -60};
  const StiffnessState s{true, false};
  const VelocityInput v{0.003, -0.004, 0, 0, 0};
  const AgentConfig ref = integrate(q0, s, v, 1.0, 4000, Integrator::RK4, g);
  const double euler = (integrate(q0, s, v, 1.0, 20, Integrator::Euler, g).vector() - ref.vector()).norm();
  const double rk4a = (integrate(q0, s, v, 1.0, 10, Integrator::RK4, g).vector() - ref.vector()).norm();
  const double rk4b = (integrate(q0, s, v, 1.0, 20, Integrator::RK4, g).vector() - ref.vector()).norm();
  EXPECT_LT(rk4b, 1e-3 * euler);
  EXPECT_GT(rk4a / rk4b, 10.0);
}

TEST(Simulator, MatchesIndependentRigidMotion) {
  const GeometryParams g;
  const AgentConfig q0{0.05, -0.1, 0.7, 0, 0};
  const AgentConfig num = integrate(q0, {}, {0, 0, 0.03, -0.02, 0.4}, 1.0, 200, Integrator::RK4, g);
  const AgentConfig ex = o::rigid_motion(q0, 0.03, -0.02, 0.4, 1.0);
  EXPECT_NEAR(num.x, ex.x, 1e-12);
  EXPECT_NEAR(num.y, ex.y, 1e-12);
  EXPECT_NEAR(num.phi, ex.phi, 1e-12);
}

TEST(Simulator, ExclusivityViolation) {
  const GeometryParams g;
  EXPECT_THROW(fk_step(AgentConfig{}, {}, {0.01, 0, 0, 0, 0}, 0.05, g), ContractError);
  EXPECT_THROW(fk_step(AgentConfig{}, {true, false}, {0, 0, 0.1, 0, 0}, 0.05, g), ContractError);
}

TEST(Simulator, CurvatureClampIsFlagged) {
  const GeometryParams g;
  const AgentConfig q{0, 0, 0, 0.999 * g.kappa_max(), 0};
  const StepResult r = fk_step(q, {true, false}, {0.05, 0, 0, 0, 0}, 0.05, g);
  EXPECT_TRUE(r.curvature_saturated);
  EXPECT_EQ(r.q.kappa1, g.kappa_max());
}

TEST(Simulator, SingleRigidRunHasNoPauses) {
  const PlanResult p = single_run_plan({}, {0, 0, 0.02, 0, 0.1}, 40);
  const Trajectory t = rollout(AgentConfig{}, p);
  EXPECT_TRUE(t.pauses.empty());
  EXPECT_NEAR(t.duration(), 40 * 0.05, 1e-12);
  EXPECT_EQ(t.states.size(), 41u);
  EXPECT_FALSE(t.aborted);
}

TEST(Simulator, SoftRunWaitsForMelting) {
  PlanResult p = single_run_plan({}, {0, 0, 0.02, 0, 0}, 10);
  const auto soft = single_run_plan({true, false}, {0.002, 0, 0, 0, 0}, 10);
  p.stiffness_schedule.insert(p.stiffness_schedule.end(), soft.stiffness_schedule.begin(),
                              soft.stiffness_schedule.end());
  p.velocity_schedule.insert(p.velocity_schedule.end(), soft.velocity_schedule.begin(),
                             soft.velocity_schedule.end());
  const SimOptions opt;
  const Trajectory t = rollout(AgentConfig{}, p, opt);
  ASSERT_EQ(t.pauses.size(), 1u);
  const Pause& pause = t.pauses[0];
  EXPECT_EQ(pause.plan_step, 10u);
  EXPECT_TRUE(pause.to.s1);
  // Segment 1 started from ambient, segment 2 stays rigid.
  EXPECT_NEAR(pause.duration, transition_latency(opt.thermal.T_amb, true, opt.thermal, 0.05), 1e-9);
  EXPECT_NEAR(t.duration(), 20 * 0.05 + pause.duration, 1e-9);
  for (const auto& s : t.states) {
    if (s.paused) EXPECT_EQ(s.v.vector().norm(), 0.0);
  }
  for (std::size_t i = 1; i < t.states.size(); ++i) EXPECT_GT(t.states[i].t, t.states[i - 1].t);
}

TEST(Simulator, MatchesPlannerWithoutGating) {
  const GeometryParams g;
  std::mt19937_64 rng(17);
  SimOptions opt;
  opt.thermal_gating = false;
  opt.geometry = g;
  for (int trial = 0; trial < 5; ++trial) {
    const AgentConfig q0 = random_config(rng, g);
    const AgentConfig qt = random_config(rng, g);
    const PlanResult p = plan(q0, qt, PlannerParams{}, g);
    const Trajectory t = rollout(q0, p, opt);
    ASSERT_EQ(t.states.size(), p.trajectory.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < t.states.size(); ++i) {
      worst = std::max(worst, (t.states[i].q.vector() - p.trajectory[i].vector()).cwiseAbs().maxCoeff());
    }
    EXPECT_LE(worst, 1e-9);
    EXPECT_EQ(t.curvature_saturation_events, 0);
  }
}

TEST(Simulator, ThermalTimeoutAborts) {
  const PlanResult p = single_run_plan({true, true}, {0.001, 0.001, 0, 0, 0}, 5);
  SimOptions opt;
  opt.thermal_timeout = 1.0;
  const Trajectory t = rollout(AgentConfig{}, p, opt);
  EXPECT_TRUE(t.aborted);
  EXPECT_NE(t.diagnostic.find("exceeded"), std::string::npos);
  EXPECT_NEAR(t.duration(), 1.0, 0.051);
}

TEST(Simulator, RejectsInconsistentPlan) {
  PlanResult p = single_run_plan({}, {}, 3);
  p.velocity_schedule.pop_back();
  EXPECT_THROW(rollout(AgentConfig{}, p), ContractError);
}
