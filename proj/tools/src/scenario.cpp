#include "twosr/app/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "twosr/errors.hpp"
#include "json_support.hpp"

namespace twosr::app {

using nlohmann::json;

ScenarioError::ScenarioError(std::string source, int line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         message),
      source_(std::move(source)),
      line_(line),
      message_(message) {}

namespace {

using namespace detail;

AgentConfig parse_config(const json& v, const std::string& name, const GeometryParams& geom,
                         const Locator& loc) {
  const std::vector<std::string> path{name};
  AgentConfig q;
  if (v.is_array()) {
    if (v.size() != 5) loc.fail(path, "expected [x, y, phi, kappa1, kappa2]");
    Vector5d x;
    for (std::size_t i = 0; i < 5; ++i) {
      if (!v[i].is_number()) loc.fail(path, "entries must be numbers");
      x(static_cast<int>(i)) = v[i].get<double>();
    }
    q = AgentConfig::from_vector(x);
  } else {
    reject_unknown(v, {"x", "y", "phi", "kappa1", "kappa2"}, path, loc);
    q.x = number(v, "x", 0.0, path, loc);
    q.y = number(v, "y", 0.0, path, loc);
    q.phi = number(v, "phi", 0.0, path, loc);
    q.kappa1 = number(v, "kappa1", 0.0, path, loc);
    q.kappa2 = number(v, "kappa2", 0.0, path, loc);
  }
  try {
    check_admissible(q, geom, name.c_str());
  } catch (const DomainError& e) {
    loc.fail(path, e.what());
  }
  return q;
}

}  // namespace

Integrator parse_integrator(const std::string& name) {
  if (name == "euler") return Integrator::Euler;
  if (name == "rk4") return Integrator::RK4;
  throw DomainError("integrator must be 'euler' or 'rk4', got '" + name + "'");
}

void apply_preset(Scenario& s, Preset preset) {
  s.preset = preset;
  if (preset == Preset::PaperCompat) s.planner.weights = PlannerParams::paper_compat().weights;
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  const Locator loc(text, source);
  reject_unknown(doc, {"geometry", "planner", "thermal", "q0", "qt", "seed", "output_dir", "flags"},
                 {}, loc);

  Scenario s;
  if (doc.contains("flags")) {
    const auto& f = doc.at("flags");
    const std::vector<std::string> path{"flags"};
    reject_unknown(f, {"thermal_gating", "integrator", "preset", "hysteresis", "keyframes"}, path,
                   loc);
    auto boolean = [&](const std::string& key, bool fallback) {
      if (!f.contains(key)) return fallback;
      if (!f.at(key).is_boolean()) loc.fail({"flags", key}, "expected true or false");
      return f.at(key).get<bool>();
    };
    auto text_flag = [&](const std::string& key, const std::string& fallback) {
      if (!f.contains(key)) return fallback;
      if (!f.at(key).is_string()) loc.fail({"flags", key}, "expected a string");
      return f.at(key).get<std::string>();
    };
    s.sim.thermal_gating = boolean("thermal_gating", true);
    s.keyframes = boolean("keyframes", true);
    try {
      s.sim.integrator = parse_integrator(text_flag("integrator", "euler"));
    } catch (const DomainError& e) {
      loc.fail({"flags", "integrator"}, e.what());
    }
    const std::string preset = text_flag("preset", "default");
    if (preset == "paper-compat") {
      apply_preset(s, Preset::PaperCompat);
    } else if (preset != "default") {
      loc.fail({"flags", "preset"}, "must be 'default' or 'paper-compat'");
    }
    const std::string hyst = text_flag("hysteresis", "progress");
    if (hyst == "motion") {
      s.planner.hysteresis = Hysteresis::Motion;
    } else if (hyst != "progress") {
      loc.fail({"flags", "hysteresis"}, "must be 'progress' or 'motion'");
    }
  }

  if (doc.contains("geometry")) {
    const auto& g = doc.at("geometry");
    const std::vector<std::string> path{"geometry"};
    reject_unknown(g, {"rho_w", "a", "d", "l1", "l0", "l"}, path, loc);
    s.geometry.rho_w = positive(g, "rho_w", s.geometry.rho_w, path, loc);
    s.geometry.a = positive(g, "a", s.geometry.a, path, loc);
    s.geometry.d = positive(g, "d", s.geometry.d, path, loc);
    s.geometry.l1 = positive(g, "l1", s.geometry.l1, path, loc);
    s.geometry.l0 = positive(g, "l0", s.geometry.l0, path, loc);
    s.geometry.l = positive(g, "l", s.geometry.l, path, loc);
  }
  s.sim.geometry = s.geometry;

  if (doc.contains("planner")) {
    const auto& p = doc.at("planner");
    const std::vector<std::string> path{"planner"};
    reject_unknown(p, {"lambda", "dt", "eps_goal", "eps_progress", "weights", "damping", "max_steps",
                       "omega_max"},
                   path, loc);
    auto& pl = s.planner;
    pl.lambda = positive(p, "lambda", pl.lambda, path, loc);
    pl.dt = positive(p, "dt", pl.dt, path, loc);
    pl.eps_goal = positive(p, "eps_goal", pl.eps_goal, path, loc);
    pl.eps_progress = positive(p, "eps_progress", pl.eps_progress, path, loc);
    pl.damping = positive(p, "damping", pl.damping, path, loc);
    if (p.contains("omega_max")) pl.omega_max = positive(p, "omega_max", pl.omega_max, path, loc);
    if (p.contains("max_steps")) {
      const auto& m = p.at("max_steps");
      if (!m.is_number_integer() || m.get<long long>() < 1 || m.get<long long>() > 100000000) {
        loc.fail({"planner", "max_steps"}, "expected an integer >= 1");
      }
      pl.max_steps = static_cast<int>(m.get<long long>());
    }
    if (p.contains("weights")) {
      const auto& w = p.at("weights");
      if (!w.is_array() || w.size() != 5) loc.fail({"planner", "weights"}, "expected 5 numbers");
      for (std::size_t i = 0; i < 5; ++i) {
        if (!w[i].is_number() || !(w[i].get<double>() > 0)) {
          loc.fail({"planner", "weights"}, "weights must be numbers > 0");
        }
        pl.weights[i] = w[i].get<double>();
      }
    }
  }

  if (doc.contains("thermal")) {
    const auto& t = doc.at("thermal");
    const std::vector<std::string> path{"thermal"};
    reject_unknown(t, {"tau", "gain", "T_amb", "T_set_soft", "T_set_rigid", "T_melt", "T_solid",
                       "Kp", "Ki", "timeout"},
                   path, loc);
    auto& th = s.sim.thermal;
    th.tau = positive(t, "tau", th.tau, path, loc);
    th.gain = positive(t, "gain", th.gain, path, loc);
    th.T_amb = number(t, "T_amb", th.T_amb, path, loc);
    th.T_set_soft = number(t, "T_set_soft", th.T_set_soft, path, loc);
    th.T_set_rigid = number(t, "T_set_rigid", th.T_set_rigid, path, loc);
    th.T_melt = number(t, "T_melt", th.T_melt, path, loc);
    th.T_solid = number(t, "T_solid", th.T_solid, path, loc);
    th.Kp = number(t, "Kp", th.Kp, path, loc);
    th.Ki = number(t, "Ki", th.Ki, path, loc);
    s.sim.thermal_timeout = positive(t, "timeout", s.sim.thermal_timeout, path, loc);
    try {
      th.validate();
    } catch (const DomainError& e) {
      loc.fail(path, e.what());
    }
  }

  if (doc.contains("seed")) {
    const auto& v = doc.at("seed");
    if (!v.is_number_unsigned()) loc.fail({"seed"}, "expected a non-negative integer");
    s.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) loc.fail({"output_dir"}, "expected a string");
    s.output_dir = doc.at("output_dir").get<std::string>();
  }
  if (doc.contains("q0")) s.q0 = parse_config(doc.at("q0"), "q0", s.geometry, loc);
  if (doc.contains("qt")) s.qt = parse_config(doc.at("qt"), "qt", s.geometry, loc);
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ScenarioError(file.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), file.string());
}

}  // namespace twosr::app
