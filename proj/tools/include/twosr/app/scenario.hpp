#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "twosr/geometry.hpp"
#include "twosr/planner.hpp"
#include "twosr/simulator.hpp"

namespace twosr::app {

/// Parse or validation failure, anchored to a line of the source document
/// (0 when no line applies).
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string source, int line, const std::string& message);

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::string source_;
  int line_;
  std::string message_;
};

enum class Preset { Default, PaperCompat };

struct Scenario {
  GeometryParams geometry;
  PlannerParams planner;
  SimOptions sim;
  std::optional<AgentConfig> q0;  ///< sampled from `seed` when absent
  std::optional<AgentConfig> qt;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "twosr_out";
  Preset preset = Preset::Default;
  bool keyframes = true;
};

/// Parses a scenario document. Unknown keys and out-of-range values raise
/// ScenarioError with the line of the offending key.
Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& file);

/// Re-applies a preset on top of the parsed planner block.
void apply_preset(Scenario& scenario, Preset preset);

Integrator parse_integrator(const std::string& name);

}  // namespace twosr::app
