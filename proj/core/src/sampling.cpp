#include "twosr/sampling.hpp"

#include <numbers>

namespace twosr {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

AgentConfig random_config(std::mt19937_64& rng, const GeometryParams& geom) {
  auto between = [&](double lo, double hi) { return lo + (hi - lo) * uniform01(rng); };
  AgentConfig q;
  q.x = between(-0.3, 0.3);
  q.y = between(-0.3, 0.3);
  q.phi = between(-std::numbers::pi, std::numbers::pi);
  q.kappa1 = between(-geom.kappa_max(), geom.kappa_max());
  q.kappa2 = between(-geom.kappa_max(), geom.kappa_max());
  return q;
}

}  // namespace twosr
