#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twosr/errors.hpp"
#include "twosr/planner.hpp"

using namespace twosr;
namespace o = twosr::oracle;

namespace {

constexpr double kPi = std::numbers::pi;

struct Pair {
  AgentConfig q0, qt;
};

std::vector<Pair> pairs(std::uint64_t seed, int n, const GeometryParams& g) {
  std::mt19937_64 rng(seed);
  std::vector<Pair> out;
  for (int i = 0; i < n; ++i) {
    const AgentConfig a = random_config(rng, g);
    out.push_back({a, random_config(rng, g)});
  }
  return out;
}

}  // namespace

TEST(Planner, ZeroDistanceStart) {
  const AgentConfig q{0.1, -0.2, 0.5, 30, -10};
  const PlanResult r = plan(q, q, PlannerParams{});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.steps(), 0u);
  EXPECT_TRUE(r.stiffness_schedule.empty());
  EXPECT_EQ(r.mode_switch_count, 0);
  ASSERT_EQ(r.trajectory.size(), 1u);
  EXPECT_EQ(r.trajectory[0], q);
}

TEST(Planner, PureTranslationStaysRigidAndStraight) {
  const PlanResult r = plan(AgentConfig{}, AgentConfig{0.1, 0, 0, 0, 0}, PlannerParams{});
  ASSERT_TRUE(r.converged);
  ASSERT_GT(r.steps(), 0u);
  for (const auto& s : r.stiffness_schedule) EXPECT_TRUE(s.rigid());
  for (const auto& q : r.trajectory) {
    EXPECT_NEAR(q.y, 0.0, 1e-12);
    EXPECT_NEAR(q.phi, 0.0, 1e-12);
    EXPECT_EQ(q.kappa1, 0.0);
  }
  EXPECT_EQ(r.mode_switch_count, 0);
}

TEST(Planner, RigidHypothesisWinsWhenCurvatureIsRight) {
  // Exhaustive per-step comparison for the translation example.
  const PlannerParams p;
  const GeometryParams g;
  const AgentConfig qt{0.1, 0, 0, 0, 0};
  const PlanResult r = plan(AgentConfig{}, qt, p, g);
  for (std::size_t i = 0; i < r.steps(); ++i) {
    const auto rigid = evaluate_hypothesis(r.trajectory[i], qt, {}, p, g);
    for (int k = 1; k < 4; ++k) {
      const auto h = evaluate_hypothesis(r.trajectory[i], qt, StiffnessState::from_index(k), p, g);
      EXPECT_LE(rigid.distance, h.distance);
    }
  }
}

TEST(Planner, InvariantsOnRandomPairs) {
  const PlannerParams p;
  const GeometryParams g;
  for (const auto& [q0, qt] : pairs(42, 15, g)) {
    const PlanResult r = plan(q0, qt, p, g);
    ASSERT_EQ(r.stiffness_schedule.size(), r.velocity_schedule.size());
    ASSERT_EQ(r.trajectory.size(), r.steps() + 1);
    ASSERT_EQ(r.distance.size(), r.trajectory.size());
    EXPECT_EQ(static_cast<int>(r.mode_runs().size()) - 1, r.mode_switch_count);
    for (std::size_t i = 1; i < r.distance.size(); ++i) {
      EXPECT_LE(r.distance[i], r.distance[i - 1] + p.eps_progress);
    }
    for (std::size_t i = 0; i < r.steps(); ++i) {
      const auto& s = r.stiffness_schedule[i];
      const double bound = curvature_bound(s, g) * (1 + 1e-12);
      EXPECT_LE(std::abs(r.trajectory[i + 1].kappa1), bound);
      EXPECT_LE(std::abs(r.trajectory[i + 1].kappa2), bound);
      const auto& v = r.velocity_schedule[i];
      EXPECT_FALSE(s.any_soft() ? v.has_rigid() : v.has_soft());
    }
  }
}

TEST(Planner, HysteresisOnlySwitchesWhenPreviousModeStalls) {
  const PlannerParams p;
  const GeometryParams g;
  for (const auto& [q0, qt] : pairs(7, 8, g)) {
    const PlanResult r = plan(q0, qt, p, g);
    for (std::size_t i = 1; i < r.steps(); ++i) {
      const auto prev = r.stiffness_schedule[i - 1];
      if (r.stiffness_schedule[i] == prev) continue;
      const auto h = evaluate_hypothesis(r.trajectory[i], qt, prev, p, g);
      EXPECT_TRUE(!h.feasible || h.progress <= p.eps_progress)
          << "switched away from a mode still progressing by " << h.progress;
    }
  }
}

TEST(Planner, Deterministic) {
  const GeometryParams g;
  const auto pr = pairs(99, 1, g).front();
  const PlanResult a = plan(pr.q0, pr.qt, PlannerParams{}, g);
  const PlanResult b = plan(pr.q0, pr.qt, PlannerParams{}, g);
  ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) EXPECT_EQ(a.trajectory[i], b.trajectory[i]);
  for (std::size_t i = 0; i < a.steps(); ++i) {
    EXPECT_EQ(a.stiffness_schedule[i], b.stiffness_schedule[i]);
    EXPECT_EQ(a.velocity_schedule[i], b.velocity_schedule[i]);
  }
}

TEST(Planner, BothSoftHypothesisSkippedBeyondHalfCircle) {
  const GeometryParams g;
  const AgentConfig q{0, 0, 0, 1.5 * kPi / g.l, 0};
  const auto h = evaluate_hypothesis(q, AgentConfig{}, {true, true}, PlannerParams{}, g);
  EXPECT_FALSE(h.feasible);
  EXPECT_TRUE(evaluate_hypothesis(q, AgentConfig{}, {true, false}, PlannerParams{}, g).feasible);
}

TEST(Planner, StepsNeverLeaveTheCurvatureBound) {
  const GeometryParams g;
  PlannerParams p;
  p.lambda = 50.0;  // large steps that would overshoot without scaling
  const AgentConfig q{0, 0, 0, 0.99 * g.kappa_max(), 0};
  const AgentConfig qt{0, 0, 0, g.kappa_max(), 0};
  for (int k = 1; k < 4; ++k) {
    const auto h = evaluate_hypothesis(q, qt, StiffnessState::from_index(k), p, g);
    if (!h.feasible) continue;
    EXPECT_LE(std::abs(h.next.kappa1), curvature_bound(StiffnessState::from_index(k), g) * (1 + 1e-12));
  }
}

TEST(Planner, WheelCeilingIsRespected) {
  const GeometryParams g;
  PlannerParams p;
  p.omega_max = 2.0;
  const auto pr = pairs(5, 1, g).front();
  const PlanResult r = plan(pr.q0, pr.qt, p, g);
  for (std::size_t i = 0; i < r.steps(); ++i) {
    const auto V = config_matrix(r.trajectory[i], r.stiffness_schedule[i], g);
    EXPECT_LE((V * r.velocity_schedule[i].vector()).cwiseAbs().maxCoeff(), 2.0 * (1 + 1e-9));
  }
}

TEST(Planner, NonConvergenceIsAResult) {
  PlannerParams p;
  p.max_steps = 3;
  const PlanResult r = plan(AgentConfig{}, AgentConfig{0.2, 0.1, 1.0, 50, 0}, p);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.steps(), 3u);
  EXPECT_GT(r.final_distance(), p.eps_goal);
}

TEST(Planner, StallRaisesWithDiagnostics) {
  // Past double resolution no mode can make progress any more.
  PlannerParams p;
  p.eps_goal = 1e-300;
  p.max_steps = 100000;
  try {
    plan(AgentConfig{}, AgentConfig{0.1, 0, 0, 0, 0}, p);
    FAIL() << "expected PlannerStall";
  } catch (const PlannerStall& e) {
    EXPECT_LT(e.distance, 1e-10);
    EXPECT_NEAR(e.q.x, 0.1, 1e-10);
  }
}

TEST(Planner, RejectsBadInputs) {
  PlannerParams p;
  p.dt = -1;
  EXPECT_THROW(plan(AgentConfig{}, AgentConfig{0.1, 0, 0, 0, 0}, p), DomainError);
  p = PlannerParams{};
  p.weights[3] = 0;
  EXPECT_THROW(p.validate(), DomainError);
  p = PlannerParams{};
  p.max_steps = 0;
  EXPECT_THROW(p.validate(), DomainError);
  const GeometryParams g;
  EXPECT_THROW(plan(AgentConfig{0, 0, 0, 2 * g.kappa_max(), 0}, AgentConfig{}, PlannerParams{}),
               DomainError);
}

TEST(Planner, PaperCompatPresetUsesUnitWeights) {
  const PlannerParams p = PlannerParams::paper_compat();
  for (double w : p.weights) EXPECT_EQ(w, 1.0);
  EXPECT_EQ(p.dt, PlannerParams{}.dt);
}

TEST(Planner, WeightedDistanceWrapsHeading) {
  const std::array<double, 5> w{1, 1, 1, 1, 1};
  const AgentConfig a{0, 0, kPi - 0.1, 0, 0};
  const AgentConfig b{0, 0, -kPi + 0.1, 0, 0};
  EXPECT_NEAR(weighted_distance(a, b, w), 0.2, 1e-12);
  const AgentConfig c{0.3, 0.4, 0, 0, 0};
  EXPECT_NEAR(weighted_distance(AgentConfig{}, c, w), 0.5, 1e-15);
  EXPECT_NEAR(weighted_distance(AgentConfig{}, c, {4, 4, 1, 1, 1}), 1.0, 1e-15);
}

TEST(Planner, LinearReference) {
  const AgentConfig q0{0, 0.1, 3.0, -20, 10};
  const AgentConfig qt{0.2, -0.1, -3.0, 40, 10};
  const auto ref = fk_reference(q0, qt, 10);
  ASSERT_EQ(ref.size(), 11u);
  EXPECT_EQ(ref.front(), q0);
  EXPECT_NEAR(ref.back().x, qt.x, 1e-15);
  EXPECT_NEAR(ref.back().kappa1, qt.kappa1, 1e-15);
  EXPECT_NEAR(wrap_angle(ref.back().phi - qt.phi), 0.0, 1e-15);
  EXPECT_NEAR(ref[5].x, 0.1, 1e-15);
  EXPECT_NEAR(ref[5].y, 0.0, 1e-15);
  EXPECT_NEAR(ref[5].kappa1, 10.0, 1e-13);
  // Heading goes the short way through pi.
  EXPECT_NEAR(ref[5].phi, 3.0 + (2 * kPi - 6.0) / 2, 1e-12);
  EXPECT_GT(ref[1].phi, q0.phi);
  EXPECT_EQ(fk_reference(q0, qt, 0).size(), 1u);
}
