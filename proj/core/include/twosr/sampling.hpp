#pragma once

#include <cstdint>
#include <random>

#include "twosr/geometry.hpp"

namespace twosr {

/// Uniform double in [0, 1) from the top 53 bits; stable across standard
/// libraries, unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng);

/// x, y in [-0.3, 0.3] m, phi in [-pi, pi], both curvatures in [-2*pi/l, 2*pi/l].
AgentConfig random_config(std::mt19937_64& rng, const GeometryParams& geom);

}  // namespace twosr
