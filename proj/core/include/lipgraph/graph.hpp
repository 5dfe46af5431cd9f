#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lipgraph/geometry.hpp"

namespace lipgraph {

/// Orthonormal frame: x along (cos t, sin t), y along (-sin t, cos t).
class Frame {
 public:
  Frame() = default;
  explicit Frame(double theta) : theta_(theta) {}

  double theta() const { return theta_; }
  Point x_axis() const;
  Point y_axis() const;
  Point to_frame(Point world) const;
  Point to_world(Point framed) const;

 private:
  double theta_ = 0.0;
};

using Level = std::vector<ConvexPolygon>;

struct GraphHypotheses {
  double lambda = 0.0;
  double c = 0.0;
  double sigma = 0.0;
  double piece_ratio = 0.0;     // largest height / width of a piece in the frame
  double connector_slope = 0.0; // largest slope between consecutive pieces
  std::vector<double> sup_differences;  // sup |g_{n+1} - g_n|
  std::vector<double> max_diameters;    // per level
};

/// Piecewise-linear function in frame coordinates.
class PLGraph {
 public:
  PLGraph() = default;
  PLGraph(Frame frame, std::vector<double> xs, std::vector<double> ys);

  const Frame& frame() const { return frame_; }
  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  Interval domain() const { return {xs_.front(), xs_.back()}; }
  double operator()(double x) const;
  double lipschitz() const;
  std::vector<Point> world_polyline() const;
  /// Euclidean distance (in the plane) from p, given in frame coordinates.
  double distance(Point framed) const;

 private:
  Frame frame_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// Frame-x extent shared by every level.
Interval frame_domain(std::span<const ConvexPolygon> pieces, const Frame& frame);

/// Constant outside the pieces, a chord from the leftmost to the rightmost
/// support point across each piece, and straight connectors in between.
PLGraph build_level(std::span<const ConvexPolygon> pieces, const Frame& frame, Interval domain);

/// Exact sup distance between two piecewise-linear graphs on the same domain.
double sup_difference(const PLGraph& a, const PLGraph& b);

GraphHypotheses verify_hypotheses(std::span<const Level> levels, const Frame& frame,
                                  std::optional<double> sigma_hint = std::nullopt);

struct GraphBuild {
  std::vector<PLGraph> graphs;
  double measured_lipschitz = 0.0;
  std::vector<double> sup_differences;
  std::vector<double> cauchy_bounds;  // c sigma^n
  double tail_bound = 0.0;            // distance from the last graph to the limit
};

GraphBuild build_graph(std::span<const Level> levels, const Frame& frame,
                       const GraphHypotheses& hyp);

struct Containment {
  bool pass = true;
  double radius = 0.0;
  double max_distance = 0.0;
  std::optional<std::size_t> witness_piece;
  Point witness_vertex;
};

/// Checks that every vertex of every piece lies within `radius` of the graph.
Containment containment_check(std::span<const ConvexPolygon> pieces, const PLGraph& graph,
                              double radius);

}  // namespace lipgraph
