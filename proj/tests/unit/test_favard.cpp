#include <gtest/gtest.h>

#include <cmath>

#include "lipgraph/favard.hpp"
#include "lipgraph/ifs.hpp"
#include "oracles.hpp"

using namespace lipgraph;

namespace {

std::vector<ConvexPolygon> cantor_level(int n) {
  return generation(Ifs::cantor4(), ConvexPolygon::square({0, 0}, 1.0), n).polygons();
}

}  // namespace

TEST(Favard, UnitSquareIsFourOverPi) {
  const std::vector<ConvexPolygon> sq{ConvexPolygon::square({0, 0}, 1.0)};
  EXPECT_NEAR(favard_length(sq, AngleGrid(1024)).value, 4.0 / kPi, 1e-4);
}

TEST(Favard, SegmentIsTwoOverPiTimesLength) {
  const std::vector<Point> seg{{0, 0}, {3, 0}};
  const std::vector<ConvexPolygon> s{ConvexPolygon::hull(seg)};
  EXPECT_NEAR(favard_length(s, AngleGrid(1024)).value, 6.0 / kPi, 1e-5);
}

TEST(Favard, CantorProjectionsMatchBruteUnion) {
  const AngleGrid grid(64);
  for (int n = 1; n <= 4; ++n) {
    const auto polys = cantor_level(n);
    const FavardReport r = favard_length(polys, grid);
    for (int i = 0; i < grid.resolution(); ++i) {
      EXPECT_NEAR(r.lengths[static_cast<std::size_t>(i)], oracle::cantor4_projection(n, grid.angle(i)), 1e-12);
    }
  }
}

TEST(Favard, ArctanHalfShadowIsConstant) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_NEAR(projection_length(cantor_level(n), Angle(std::atan(0.5))), 3.0 / std::sqrt(5.0), 1e-9);
  }
}

TEST(Favard, NeighbourhoodDominatesAndIsComparable) {
  const AngleGrid grid(256);
  for (int n = 1; n <= 4; ++n) {
    const auto polys = cantor_level(n);
    const double delta = std::pow(4.0, -n);
    const double base = favard_length(polys, grid).value;
    const double nb = favard_of_neighborhood(polys, delta, grid).value;
    EXPECT_GE(nb, base);
    EXPECT_LE(nb, 10.0 * base);
  }
}

TEST(Favard, DecaysAndGenerationsAreNested) {
  const AngleGrid grid(256);
  double previous = 1e300;
  for (int n = 1; n <= 6; ++n) {
    const double f = favard_length(cantor_level(n), grid).value;
    EXPECT_LE(f, previous + 1e-12);
    previous = f;
  }
}

TEST(Favard, BestAngleIsAMaximum) {
  const AngleGrid grid(512);
  const auto polys = cantor_level(2);
  const BestAngle b = best_angle(polys, grid);
  for (int i = 0; i < grid.resolution(); ++i) {
    EXPECT_LE(projection_length(polys, Angle(grid.angle(i))), b.length + 1e-12);
  }
}
