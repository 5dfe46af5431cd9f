#include "lipgraph/favard.hpp"

#include <cmath>

#include "lipgraph/error.hpp"
#include "lipgraph/parallel.hpp"

namespace lipgraph {

AngleGrid::AngleGrid(int resolution) : resolution_(resolution) {
  if (resolution < 8) fail(ErrorKind::Input, "angle grid needs at least 8 points");
}

IntervalUnion projection(std::span<const ConvexPolygon> pieces, Angle theta, double inflate) {
  std::vector<Interval> ivs;
  ivs.reserve(pieces.size());
  for (const ConvexPolygon& p : pieces) ivs.push_back(project(p, theta).inflated(inflate));
  return IntervalUnion(std::move(ivs));
}

double projection_length(std::span<const ConvexPolygon> pieces, Angle theta, double inflate) {
  return projection(pieces, theta, inflate).length();
}

namespace {

// Neumaier-compensated sum, fixed order.
double stable_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

FavardReport sweep(std::span<const ConvexPolygon> pieces, double inflate, const AngleGrid& grid) {
  if (pieces.empty()) fail(ErrorKind::Precondition, "Favard length of an empty piece set");
  const int g = grid.resolution();
  FavardReport out;
  out.angles.resize(g);
  out.lengths.resize(g);
  parallel_for(static_cast<std::size_t>(g), [&](std::size_t i) {
    const double theta = grid.angle(static_cast<int>(i));
    out.angles[i] = theta;
    out.lengths[i] = projection_length(pieces, Angle(theta), inflate);
  });
  out.value = stable_sum(out.lengths) / g;
  out.best_angle = out.angles[0];
  out.best_length = out.lengths[0];
  for (int i = 1; i < g; ++i) {
    if (out.lengths[i] > out.best_length) {
      out.best_length = out.lengths[i];
      out.best_angle = out.angles[i];
    }
  }
  return out;
}

}  // namespace

FavardReport favard_length(std::span<const ConvexPolygon> pieces, const AngleGrid& grid) {
  return sweep(pieces, 0.0, grid);
}

FavardReport favard_length(const Generation& gen, const AngleGrid& grid) {
  const std::vector<ConvexPolygon> polys = gen.polygons();
  return sweep(polys, 0.0, grid);
}

FavardReport favard_of_neighborhood(std::span<const ConvexPolygon> pieces, double delta,
                                    const AngleGrid& grid) {
  if (!(delta >= 0.0)) fail(ErrorKind::Input, "neighbourhood radius must be non-negative");
  return sweep(pieces, delta, grid);
}

BestAngle best_angle(std::span<const ConvexPolygon> pieces, const AngleGrid& grid) {
  const FavardReport r = sweep(pieces, 0.0, grid);
  return {Angle(r.best_angle), r.best_length};
}

}  // namespace lipgraph
