#include "twosr/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <Eigen/Cholesky>

#include "twosr/csv.hpp"
#include "twosr/errors.hpp"
#include "twosr/simulator.hpp"

namespace twosr {

PlannerParams PlannerParams::paper_compat() {
  PlannerParams p;
  p.weights = {1.0, 1.0, 1.0, 1.0, 1.0};
  return p;
}

void PlannerParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0; };
  if (!positive(lambda)) throw DomainError("planner lambda must be > 0");
  if (!positive(dt)) throw DomainError("planner dt must be > 0");
  if (!positive(eps_goal)) throw DomainError("planner eps_goal must be > 0");
  if (!positive(eps_progress)) throw DomainError("planner eps_progress must be > 0");
  if (!positive(damping)) throw DomainError("planner damping must be > 0");
  for (double w : weights) {
    if (!positive(w)) throw DomainError("planner weights must all be > 0");
  }
  if (max_steps < 1) throw DomainError("planner max_steps must be >= 1");
  if (!(omega_max > 0)) throw DomainError("planner omega_max must be > 0");
}

std::vector<StiffnessState> PlanResult::mode_runs() const {
  std::vector<StiffnessState> runs;
  for (const auto& s : stiffness_schedule) {
    if (runs.empty() || !(runs.back() == s)) runs.push_back(s);
  }
  return runs;
}

Vector5d config_error(const AgentConfig& q, const AgentConfig& qt) {
  Vector5d e = qt.vector() - q.vector();
  e(2) = wrap_angle(e(2));
  return e;
}

double weighted_distance(const AgentConfig& a, const AgentConfig& b,
                         const std::array<double, 5>& weights) {
  const Vector5d e = config_error(a, b);
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) sum += weights[static_cast<std::size_t>(i)] * e(i) * e(i);
  return std::sqrt(sum);
}

double curvature_bound(const StiffnessState& s, const GeometryParams& geom) {
  return (s.s1 && s.s2) ? std::numbers::pi / geom.l : geom.kappa_max();
}

void check_admissible(const AgentConfig& q, const GeometryParams& geom, const char* name) {
  const Vector5d v = q.vector();
  if (!v.allFinite()) throw DomainError(std::string(name) + " has non-finite entries");
  const double bound = geom.kappa_max() * (1 + 1e-12);
  if (std::abs(q.kappa1) > bound || std::abs(q.kappa2) > bound) {
    throw DomainError(std::string(name) + " curvature exceeds 2*pi/l = " +
                      std::to_string(geom.kappa_max()) + " 1/m");
  }
}

namespace {

Hypothesis evaluate(const AgentConfig& q, const AgentConfig& qt, const StiffnessState& s,
                    double d, const PlannerParams& p, const GeometryParams& geom,
                    const SpiralSet& spirals) {
  Hypothesis h;
  h.next = q;
  const double bound = curvature_bound(s, geom);
  if (std::abs(q.kappa1) > bound || std::abs(q.kappa2) > bound) return h;

  const Matrix5d J = hybrid_jacobian(q, s, geom, spirals).matrix();
  // Least squares in the same weighted metric that ranks the hypotheses.
  Vector5d sqrt_w;
  for (int i = 0; i < 5; ++i) sqrt_w(i) = std::sqrt(p.weights[static_cast<std::size_t>(i)]);
  const Matrix5d Jw = sqrt_w.asDiagonal() * J;
  const Vector5d e = p.lambda * sqrt_w.cwiseProduct(config_error(q, qt));
  const Matrix5d JJt = Jw * Jw.transpose() + p.damping * p.damping * Matrix5d::Identity();
  Vector5d v = Jw.transpose() * JJt.ldlt().solve(e);

  if (std::isfinite(p.omega_max)) {
    const ConfigMatrix V = config_matrix(q, s, geom);
    const double peak = (V * v).cwiseAbs().maxCoeff();
    if (peak > p.omega_max) v *= p.omega_max / peak;
  }

  // Shrink the step so neither curvature leaves the bound.
  const Vector5d dq = J * v * p.dt;
  double scale = 1.0;
  for (int i = 3; i < 5; ++i) {
    const double k = q.vector()(i);
    const double target = k + dq(i);
    if (std::abs(target) > bound) {
      const double room = std::copysign(bound, dq(i)) - k;
      scale = std::min(scale, std::max(0.0, room / dq(i)));
    }
  }
  v *= scale;

  h.feasible = true;
  h.v = v;
  h.next = fk_step(q, s, VelocityInput::from_vector(v), p.dt, geom, Integrator::Euler, spirals).q;
  h.distance = weighted_distance(h.next, qt, p.weights);
  h.progress = d - h.distance;
  h.motion = weighted_distance(q, h.next, p.weights);
  return h;
}

}  // namespace

Hypothesis evaluate_hypothesis(const AgentConfig& q, const AgentConfig& qt, const StiffnessState& s,
                               const PlannerParams& params, const GeometryParams& geom,
                               const SpiralSet& spirals) {
  return evaluate(q, qt, s, weighted_distance(q, qt, params.weights), params, geom, spirals);
}

PlanResult plan(const AgentConfig& q0, const AgentConfig& qt, const PlannerParams& params,
                const GeometryParams& geom, const SpiralSet& spirals) {
  params.validate();
  geom.validate();
  check_admissible(q0, geom, "q0");
  check_admissible(qt, geom, "qt");

  PlanResult r;
  r.dt = params.dt;
  AgentConfig q = q0;
  double d = weighted_distance(q, qt, params.weights);
  r.trajectory.push_back(q);
  r.distance.push_back(d);
  int prev = -1;

  for (int step = 0; step < params.max_steps; ++step) {
    if (d <= params.eps_goal) {
      r.converged = true;
      break;
    }
    std::array<Hypothesis, 4> hyp;
    int best = -1;
    for (int i = 0; i < 4; ++i) {
      hyp[static_cast<std::size_t>(i)] =
          evaluate(q, qt, kAllStiffnessStates[static_cast<std::size_t>(i)], d, params, geom, spirals);
      const auto& h = hyp[static_cast<std::size_t>(i)];
      if (h.feasible && (best < 0 || h.distance < hyp[static_cast<std::size_t>(best)].distance)) {
        best = i;
      }
    }
    if (prev >= 0 && best != prev) {
      const auto& hp = hyp[static_cast<std::size_t>(prev)];
      const double held = params.hysteresis == Hysteresis::Progress ? hp.progress : hp.motion;
      if (hp.feasible && held > params.eps_progress) best = prev;
    }
    const auto& chosen = hyp[static_cast<std::size_t>(best)];
    if (!(chosen.progress > 0.0) && params.hysteresis == Hysteresis::Progress) {
      std::array<double, 4> progress{};
      for (std::size_t i = 0; i < 4; ++i) progress[i] = hyp[i].progress;
      throw PlannerStall("no stiffness mode reduces the distance to target at step " +
                             std::to_string(step) + " (distance " + std::to_string(d) + ")",
                         q, d, progress);
    }
    const StiffnessState s = kAllStiffnessStates[static_cast<std::size_t>(best)];
    if (!r.stiffness_schedule.empty() && !(r.stiffness_schedule.back() == s)) {
      ++r.mode_switch_count;
    }
    r.stiffness_schedule.push_back(s);
    r.velocity_schedule.push_back(VelocityInput::from_vector(chosen.v));
    q = chosen.next;
    d = chosen.distance;
    r.trajectory.push_back(q);
    r.distance.push_back(d);
    prev = best;
  }
  if (!r.converged && d <= params.eps_goal) r.converged = true;
  return r;
}

std::vector<AgentConfig> fk_reference(const AgentConfig& q0, const AgentConfig& qt,
                                      std::size_t n_steps) {
  std::vector<AgentConfig> out;
  if (n_steps == 0) {
    out.push_back(q0);
    return out;
  }
  const Vector5d a = q0.vector();
  const Vector5d e = config_error(q0, qt);
  out.reserve(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) {
    if (i == n_steps) {
      AgentConfig end = qt;
      end.phi = q0.phi + e(2);
      out.push_back(end);
      break;
    }
    const double t = static_cast<double>(i) / static_cast<double>(n_steps);
    out.push_back(AgentConfig::from_vector(a + t * e));
  }
  return out;
}

void write_plan_csv(std::ostream& out, const PlanResult& r) {
  write_csv_header(out, "plan",
                   {"t", "x", "y", "phi", "kappa1", "kappa2", "s1", "s2", "v1", "v2", "u0", "v0",
                    "r0"});
  const std::size_t n = r.steps();
  for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
    const auto& q = r.trajectory[i];
    const StiffnessState s = i < n ? r.stiffness_schedule[i]
                                   : (n > 0 ? r.stiffness_schedule.back() : StiffnessState{});
    const VelocityInput v = i < n ? r.velocity_schedule[i] : VelocityInput{};
    write_csv_row(out, {static_cast<double>(i) * r.dt, q.x, q.y, q.phi, q.kappa1, q.kappa2,
                        s.s1 ? 1.0 : 0.0, s.s2 ? 1.0 : 0.0, v.v1, v.v2, v.u0, v.v0, v.r0});
  }
}

}  // namespace twosr
