#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json_support.hpp"
#include "twosr/app/runner.hpp"
#include "twosr/csv.hpp"
#include "twosr/errors.hpp"
#include "twosr/spiral.hpp"

namespace twosr::app {

using namespace detail;

namespace {

SpiralMode parse_mode(const json& v, const Locator& loc) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "I") return SpiralMode::I;
    if (s == "II") return SpiralMode::II;
    if (s == "III") return SpiralMode::III;
  } else if (v.is_number_integer()) {
    const auto i = v.get<int>();
    if (i >= 1 && i <= 3) return static_cast<SpiralMode>(i);
  }
  loc.fail({"modes"}, "modes must be \"I\", \"II\" or \"III\"");
}

const char* mode_name(SpiralMode m) {
  switch (m) {
    case SpiralMode::I:
      return "I";
    case SpiralMode::II:
      return "II";
    case SpiralMode::III:
      return "III";
  }
  return "?";
}

}  // namespace

int run_sweep(const std::filesystem::path& file, const std::filesystem::path* out_override,
              std::ostream& log) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ScenarioError(file.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const json doc = parse_json(text, file.string());
  const Locator loc(text, file.string());
  reject_unknown(doc, {"axis", "values", "modes", "n_samples", "geometry", "output_dir"}, {}, loc);

  if (!doc.contains("axis") || !doc.at("axis").is_string()) loc.fail({"axis"}, "expected \"l\" or \"mode\"");
  const std::string axis = doc.at("axis").get<std::string>();
  if (axis != "l" && axis != "mode") loc.fail({"axis"}, "expected \"l\" or \"mode\"");

  GeometryParams base;
  if (doc.contains("geometry")) {
    const auto& g = doc.at("geometry");
    const std::vector<std::string> path{"geometry"};
    reject_unknown(g, {"rho_w", "a", "d", "l1", "l0", "l"}, path, loc);
    base.rho_w = positive(g, "rho_w", base.rho_w, path, loc);
    base.a = positive(g, "a", base.a, path, loc);
    base.d = positive(g, "d", base.d, path, loc);
    base.l1 = positive(g, "l1", base.l1, path, loc);
    base.l0 = positive(g, "l0", base.l0, path, loc);
    base.l = positive(g, "l", base.l, path, loc);
  }

  std::vector<SpiralMode> modes{SpiralMode::I, SpiralMode::II, SpiralMode::III};
  if (doc.contains("modes")) {
    const auto& m = doc.at("modes");
    if (!m.is_array() || m.empty()) loc.fail({"modes"}, "expected a non-empty array");
    modes.clear();
    for (const auto& v : m) modes.push_back(parse_mode(v, loc));
  }

  std::vector<double> lengths{base.l};
  if (axis == "l") {
    if (!doc.contains("values") || !doc.at("values").is_array() || doc.at("values").empty()) {
      loc.fail({"values"}, "l sweep needs a non-empty array of lengths");
    }
    lengths.clear();
    for (const auto& v : doc.at("values")) {
      if (!v.is_number() || !(v.get<double>() > 0) || !std::isfinite(v.get<double>())) {
        loc.fail({"values"}, "lengths must be finite numbers > 0");
      }
      lengths.push_back(v.get<double>());
    }
  } else if (doc.contains("values")) {
    loc.fail({"values"}, "only valid for axis \"l\"");
  }

  RefitOptions opt;
  if (doc.contains("n_samples")) {
    const auto& n = doc.at("n_samples");
    if (!n.is_number_integer() || n.get<long long>() < 50 || n.get<long long>() > 1000000) {
      loc.fail({"n_samples"}, "expected an integer >= 50");
    }
    opt.n_samples = static_cast<int>(n.get<long long>());
  }

  std::filesystem::path dir = "twosr_out";
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) loc.fail({"output_dir"}, "expected a string");
    dir = doc.at("output_dir").get<std::string>();
  }
  if (out_override) dir = *out_override;
  std::filesystem::create_directories(dir);

  std::ofstream csv(dir / "sweep.csv", std::ios::binary);
  write_csv_header(csv, "sweep",
                   {"l", "mode", "a_over_l", "b", "cx_over_l", "cy_over_l", "rms_over_l",
                    "a_rel_dev", "b_rel_dev"});
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %-4s %9s %9s %9s %9s %9s %9s\n", "l", "mode", "a/l",
                "|b|", "cx/l", "cy/l", "da/a", "db/b");
  log << line;
  for (double l : lengths) {
    for (SpiralMode m : modes) {
      // Mode I only involves the bending segment; the other modes keep the
      // agent's proportions.
      GeometryParams g = base.scaled(l / base.l);
      if (m == SpiralMode::I) {
        g = base;
        g.l = l;
      }
      const SpiralFit fit = refit_oracle(m, g, opt);
      const SpiralModel& ref = spiral(m);
      const double da = fit.a_over_l / ref.a_over_l - 1.0;
      const double db = std::abs(fit.b) / ref.b_mag - 1.0;
      csv << format_number(l) << ',' << mode_name(m) << ',' << format_number(fit.a_over_l) << ','
          << format_number(fit.b) << ',' << format_number(fit.cx_over_l) << ','
          << format_number(fit.cy_over_l) << ',' << format_number(fit.rms_residual_over_l) << ','
          << format_number(da) << ',' << format_number(db) << '\n';
      std::snprintf(line, sizeof line, "%-8g %-4s %9.4f %9.4f %9.4f %9.4f %+8.2f%% %+8.2f%%\n",
                    l, mode_name(m), fit.a_over_l, std::abs(fit.b), fit.cx_over_l, fit.cy_over_l,
                    100 * da, 100 * db);
      log << line;
    }
  }
  return kExitOk;
}

}  // namespace twosr::app
