#include "lipgraph/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace lipgraph {

namespace {

constexpr double kCanvas = 1000.0;
constexpr double kMargin = 40.0;

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Viewport {
  double x0 = 0.0, y0 = 0.0, scale = 1.0, ox = kMargin, oy = kMargin;

  Point map(Point p) const { return {ox + (p.x - x0) * scale, kCanvas - (oy + (p.y - y0) * scale)}; }
};

Viewport fit(const SvgScene& scene) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  auto grow = [&](Point p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  };
  for (const ConvexPolygon& poly : scene.pieces) {
    for (const Point& p : poly.vertices()) grow(p);
  }
  for (const auto& line : scene.polylines) {
    for (const Point& p : line) grow(p);
  }
  Viewport v;
  if (x0 > x1) return v;
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  v.x0 = x0;
  v.y0 = y0;
  v.scale = (kCanvas - 2.0 * kMargin) / span;
  v.ox = kMargin + 0.5 * ((kCanvas - 2.0 * kMargin) - (x1 - x0) * v.scale);
  v.oy = kMargin + 0.5 * ((kCanvas - 2.0 * kMargin) - (y1 - y0) * v.scale);
  return v;
}

std::string points_attr(const std::vector<Point>& pts, const Viewport& v) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point q = v.map(pts[i]);
    if (i) out += ' ';
    out += fmt6(q.x) + ',' + fmt6(q.y);
  }
  return out;
}

}  // namespace

std::string render_svg(const SvgScene& scene) {
  const Viewport v = fit(scene);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
  out += "  <title>" + escape(scene.title) + "</title>\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  out += "  <g id=\"pieces\" fill=\"#4a78b5\" fill-opacity=\"0.55\" stroke=\"#1f3b66\" stroke-width=\"0.5\">\n";
  for (const ConvexPolygon& poly : scene.pieces) {
    std::vector<Point> pts(poly.vertices().begin(), poly.vertices().end());
    out += "    <polygon points=\"" + points_attr(pts, v) + "\"/>\n";
  }
  out += "  </g>\n";
  out += "  <g id=\"graphs\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\">\n";
  for (const auto& line : scene.polylines) {
    out += "    <polyline points=\"" + points_attr(line, v) + "\"/>\n";
  }
  out += "  </g>\n";
  if (scene.frame) {
    const Point c = v.map({v.x0, v.y0});
    const double len = 120.0;
    const Point ex = scene.frame->x_axis();
    const Point ey = scene.frame->y_axis();
    auto axis = [&](Point e, const char* id) {
      const Point tip{c.x + len * e.x, c.y - len * e.y};
      return std::string("    <line id=\"") + id + "\" x1=\"" + fmt6(c.x) + "\" y1=\"" + fmt6(c.y) +
             "\" x2=\"" + fmt6(tip.x) + "\" y2=\"" + fmt6(tip.y) + "\"/>\n";
    };
    out += "  <g id=\"frame\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6 4\">\n";
    out += axis(ex, "frame-x");
    out += axis(ey, "frame-y");
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace lipgraph
