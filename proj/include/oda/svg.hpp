// SVG 1.1 figures of planar scenes. Coordinates are printed in fixed decimals for display only.
#pragma once

#include <string>
#include <vector>

#include "oda/polytope.hpp"

namespace oda {

struct SvgScene {
  enum class Role { target, piece, residual, outline };
  struct Polygon {
    RationalPolytope poly;
    Role role = Role::outline;
  };
  struct Point {
    RatVector at;
    std::string label;  // empty: the exact coordinates
  };
  std::vector<Polygon> polygons;
  std::vector<Point> points;
};

// One path element per polygon, one circle with a title per point; throws on non-planar input.
std::string render_svg(const SvgScene& scene, int precision = 3);

}  // namespace oda
