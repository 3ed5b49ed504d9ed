#pragma once

#include <string>
#include <vector>

#include "twosr/geometry.hpp"

namespace twosr {

struct Keyframe {
  AgentConfig q;
  StiffnessState s;
  double t = 0.0;
};

/// Standalone SVG drawing of the agent: both locomotion units, both arcs,
/// the middle link and the wheel markers. Soft segments are blue, rigid red.
std::string render_svg(const Keyframe& frame, const GeometryParams& geom);

/// Several keyframes overlaid on one canvas, later frames drawn on top.
std::string render_svg(const std::vector<Keyframe>& frames, const GeometryParams& geom);

}  // namespace twosr
