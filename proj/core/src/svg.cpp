#include "twosr/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "twosr/csv.hpp"

namespace twosr {

namespace {

constexpr const char* kSoftColour = "#1f5fbf";
constexpr const char* kRigidColour = "#c8232c";
constexpr double kMm = 1000.0;
constexpr int kArcSamples = 24;

struct Shape {
  std::vector<std::array<Eigen::Vector2d, 4>> units;
  std::array<std::vector<Eigen::Vector2d>, 2> arcs;
  std::array<Eigen::Vector2d, 2> middle;
  std::array<std::array<Eigen::Vector2d, 2>, 2> end_links;
  std::array<Eigen::Vector2d, 4> wheels;
};

Shape build(const AgentConfig& q, const GeometryParams& geom) {
  Shape shape;
  const Pose2 body = body_pose(q);
  shape.middle = {body * Eigen::Vector2d(-geom.l0 / 2, 0), body * Eigen::Vector2d(geom.l0 / 2, 0)};
  for (int j = 1; j <= 2; ++j) {
    auto& arc = shape.arcs[static_cast<std::size_t>(j - 1)];
    GeometryParams partial = geom;
    for (int i = 0; i <= kArcSamples; ++i) {
      partial.l = geom.l * i / kArcSamples;
      const Pose2 p = i == 0 ? Pose2(Eigen::Matrix3d::Identity())
                             : cc_transform_unchecked(q.kappa(j), j, partial);
      arc.push_back(body * (i == 0 ? Eigen::Vector2d((j == 1 ? -1 : 1) * geom.l0 / 2, 0)
                                   : p.translation()));
    }
    const Pose2 end = body * cc_transform(q.kappa(j), j, geom);
    const double dir = j == 1 ? -1.0 : 1.0;
    shape.end_links[static_cast<std::size_t>(j - 1)] = {end * Eigen::Vector2d(0, 0),
                                                        end * Eigen::Vector2d(dir * geom.l1, 0)};
    const double x0 = dir * geom.l1;
    const double x1 = dir * (geom.l1 + geom.a);
    const double h = geom.a / 2;
    shape.units.push_back({end * Eigen::Vector2d(x0, -h), end * Eigen::Vector2d(x1, -h),
                           end * Eigen::Vector2d(x1, h), end * Eigen::Vector2d(x0, h)});
  }
  const auto wheels = wheel_positions_body(q, geom);
  for (std::size_t i = 0; i < 4; ++i) shape.wheels[i] = body * Eigen::Vector2d(wheels[i].x, wheels[i].y);
  return shape;
}

std::string pt(const Eigen::Vector2d& p) {
  return format_number(std::round(p.x() * kMm * 1000) / 1000) + "," +
         format_number(std::round(-p.y() * kMm * 1000) / 1000);
}

std::string coord(const char* xn, const char* yn, const Eigen::Vector2d& p) {
  return std::string(xn) + "=\"" + format_number(std::round(p.x() * kMm * 1000) / 1000) + "\" " + yn +
         "=\"" + format_number(std::round(-p.y() * kMm * 1000) / 1000) + "\"";
}

void extend(std::array<double, 4>& box, const Eigen::Vector2d& p) {
  box[0] = std::min(box[0], p.x());
  box[1] = std::min(box[1], -p.y());
  box[2] = std::max(box[2], p.x());
  box[3] = std::max(box[3], -p.y());
}

}  // namespace

std::string render_svg(const Keyframe& frame, const GeometryParams& geom) {
  return render_svg(std::vector<Keyframe>{frame}, geom);
}

std::string render_svg(const std::vector<Keyframe>& frames, const GeometryParams& geom) {
  std::vector<Shape> shapes;
  std::array<double, 4> box{std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity(),
                            -std::numeric_limits<double>::infinity(),
                            -std::numeric_limits<double>::infinity()};
  for (const auto& f : frames) {
    shapes.push_back(build(f.q, geom));
    for (const auto& u : shapes.back().units) {
      for (const auto& p : u) extend(box, p);
    }
    for (const auto& arc : shapes.back().arcs) {
      for (const auto& p : arc) extend(box, p);
    }
  }
  if (frames.empty()) box = {0, 0, 0, 0};
  const double margin = geom.a;
  const double x = (box[0] - margin) * kMm;
  const double y = (box[1] - margin) * kMm;
  const double w = (box[2] - box[0] + 2 * margin) * kMm;
  const double h = (box[3] - box[1] + 2 * margin) * kMm;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(std::round(x))
      << ' ' << format_number(std::round(y)) << ' ' << format_number(std::ceil(w)) << ' '
      << format_number(std::ceil(h)) << "\" width=\"" << format_number(std::ceil(w) * 4)
      << "mm\" height=\"" << format_number(std::ceil(h) * 4) << "mm\">\n";
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const auto& f = frames[k];
    const auto& s = shapes[k];
    svg << "<g data-t=\"" << format_number(f.t) << "\" fill=\"none\" stroke-linecap=\"round\">\n";
    for (const auto& u : s.units) {
      svg << "  <polygon points=\"" << pt(u[0]) << ' ' << pt(u[1]) << ' ' << pt(u[2]) << ' '
          << pt(u[3]) << "\" fill=\"#d9d9d9\" stroke=\"#333\" stroke-width=\"0.6\"/>\n";
    }
    for (const auto& link : s.end_links) {
      svg << "  <line " << coord("x1", "y1", link[0]) << ' ' << coord("x2", "y2", link[1])
          << " stroke=\"#555\" stroke-width=\"2\"/>\n";
    }
    svg << "  <line " << coord("x1", "y1", s.middle[0]) << ' ' << coord("x2", "y2", s.middle[1])
        << " stroke=\"#555\" stroke-width=\"2\"/>\n";
    for (std::size_t j = 0; j < 2; ++j) {
      const bool soft = j == 0 ? f.s.s1 : f.s.s2;
      svg << "  <polyline class=\"segment" << (j + 1) << (soft ? " soft" : " rigid")
          << "\" points=\"";
      for (std::size_t i = 0; i < s.arcs[j].size(); ++i) svg << (i ? " " : "") << pt(s.arcs[j][i]);
      svg << "\" stroke=\"" << (soft ? kSoftColour : kRigidColour) << "\" stroke-width=\"3\"/>\n";
    }
    for (const auto& wpos : s.wheels) {
      svg << "  <circle " << coord("cx", "cy", wpos) << " r=\"" << format_number(geom.rho_w * kMm / 2) << "\" fill=\"#222\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace twosr
