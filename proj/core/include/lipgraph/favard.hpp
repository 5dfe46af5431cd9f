#pragma once

#include <span>
#include <vector>

#include "lipgraph/geometry.hpp"
#include "lipgraph/ifs.hpp"

namespace lipgraph {

/// Midpoint rule on [0, pi): theta_i = (i + 1/2) pi / G.
class AngleGrid {
 public:
  explicit AngleGrid(int resolution = 1024);

  int resolution() const { return resolution_; }
  double step() const { return kPi / resolution_; }
  double angle(int i) const { return (i + 0.5) * step(); }

 private:
  int resolution_;
};

/// Union of the projections of the pieces, each inflated by `inflate`.
IntervalUnion projection(std::span<const ConvexPolygon> pieces, Angle theta, double inflate = 0.0);
double projection_length(std::span<const ConvexPolygon> pieces, Angle theta, double inflate = 0.0);

struct FavardReport {
  double value = 0.0;
  std::vector<double> angles;
  std::vector<double> lengths;
  double best_angle = 0.0;
  double best_length = 0.0;
};

/// Average projection length over the grid.
FavardReport favard_length(std::span<const ConvexPolygon> pieces, const AngleGrid& grid);
FavardReport favard_length(const Generation& gen, const AngleGrid& grid);

/// Same for the closed delta-neighbourhood (projections grow by delta on each side).
FavardReport favard_of_neighborhood(std::span<const ConvexPolygon> pieces, double delta,
                                    const AngleGrid& grid);

struct BestAngle {
  Angle theta;
  double length = 0.0;
};

/// Grid angle of largest projection; ties go to the smaller angle.
BestAngle best_angle(std::span<const ConvexPolygon> pieces, const AngleGrid& grid);

}  // namespace lipgraph
