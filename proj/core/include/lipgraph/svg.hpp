#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lipgraph/geometry.hpp"
#include "lipgraph/graph.hpp"

namespace lipgraph {

struct SvgScene {
  std::string title;
  std::vector<ConvexPolygon> pieces;
  std::vector<std::vector<Point>> polylines;  // world coordinates
  std::optional<Frame> frame;                 // drawn as axes at the scene centre
};

/// Fixed 1000 x 1000 viewBox, y axis pointing up, coordinates with 6 decimals.
std::string render_svg(const SvgScene& scene);

}  // namespace lipgraph
