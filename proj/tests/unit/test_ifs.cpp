#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "lipgraph/error.hpp"
#include "lipgraph/ifs.hpp"
#include "oracles.hpp"

using namespace lipgraph;

TEST(SimilarityDimension, CantorFourIsOne) {
  EXPECT_NEAR(Ifs::cantor4().similarity_dimension(), 1.0, 1e-12);
}

TEST(SimilarityDimension, MixedScalesMatchNewtonOracle) {
  const std::vector<std::vector<double>> cases{{0.5, 0.25, 0.25}, {0.3, 0.3, 0.2, 0.1}, {0.9, 0.05}, {1.0 / 3, 1.0 / 3}};
  for (const auto& r : cases) EXPECT_NEAR(similarity_dimension(r), oracle::similarity_dimension(r), 1e-12);
}

TEST(Maps, CompositionAndFixedPoint) {
  const SimilarityMap f = SimilarityMap::make(0.5, RationalAngle::make(1, 2), {1.0, 0.0});
  const SimilarityMap g = SimilarityMap::make(0.25, RationalAngle::make(1, 3), {0.0, 2.0});
  const SimilarityMap fg = compose(f, g);
  for (Point p : {Point{0, 0}, Point{1, 2}, Point{-3, 0.5}}) {
    const Point a = fg.apply(p);
    const Point b = f.apply(g.apply(p));
    EXPECT_NEAR(a.x, b.x, 1e-14);
    EXPECT_NEAR(a.y, b.y, 1e-14);
  }
  ASSERT_TRUE(fg.rotation_pi.has_value());
  EXPECT_EQ(*fg.rotation_pi, RationalAngle::make(5, 6));
  const Point z = fixed_point(f);
  const Point fz = f.apply(z);
  EXPECT_NEAR(fz.x, z.x, 1e-14);
  EXPECT_NEAR(fz.y, z.y, 1e-14);
}

TEST(Maps, CantorFixedPointsSpanUnitSquare) {
  const AttractorHull h = attractor_hull(Ifs::cantor4());
  EXPECT_NEAR(h.hull.area(), 1.0, 1e-12);
  EXPECT_EQ(h.hull.size(), 4u);
}

TEST(Generation, CountsAndPieceCap) {
  const Ifs c4 = Ifs::cantor4();
  const ConvexPolygon unit = ConvexPolygon::square({0, 0}, 1.0);
  const Generation g = generation(c4, unit, 3);
  EXPECT_EQ(g.pieces.size(), 64u);
  for (const Piece& p : g.pieces) EXPECT_NEAR(p.polygon.diameter(), std::sqrt(2.0) / 64.0, 1e-15);
  try {
    generation(c4, unit, 6, 1000);
    FAIL() << "expected a resource error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Resource);
  }
}

TEST(Generation, CantorPiecesMatchBruteCorners) {
  const Generation g = generation(Ifs::cantor4(), ConvexPolygon::square({0, 0}, 1.0), 3);
  std::vector<std::pair<double, double>> got, want;
  for (const Piece& p : g.pieces) {
    double x = 1e300, y = 1e300;
    for (const Point& v : p.polygon.vertices()) {
      x = std::min(x, v.x);
      y = std::min(y, v.y);
    }
    got.push_back({x, y});
  }
  for (const oracle::P& c : oracle::cantor4_corners(3)) want.push_back({c.x, c.y});
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i].first, want[i].first, 1e-15);
    EXPECT_NEAR(got[i].second, want[i].second, 1e-15);
  }
}

TEST(Overlap, CantorGenerationsAreDisjoint) {
  const Generation g = generation(Ifs::cantor4(), ConvexPolygon::square({0, 0}, 1.0), 2);
  EXPECT_EQ(overlap_index(g).overlap_index, 1);
}

TEST(Overlap, DoubledMapGivesIndexTwo) {
  const SimilarityMap a = SimilarityMap::make(0.5, RationalAngle{}, {0, 0});
  const SimilarityMap b = SimilarityMap::make(0.5, RationalAngle{}, {0.25, 0});
  const Generation g = generation(Ifs({a, b}), ConvexPolygon::square({0, 0}, 1.0), 1);
  EXPECT_EQ(overlap_index(g).overlap_index, 2);
}

TEST(LineSlice, CantorBottomRow) {
  const LineSlice s = line_invariant_subifs(Ifs::cantor4(), Angle(0.0), 0.0);
  EXPECT_EQ(s.indices.size(), 2u);
  EXPECT_NEAR(s.dimension, 0.5, 1e-12);
  const LineSlice none = line_invariant_subifs(Ifs::cantor4(), Angle(0.0), 0.5);
  EXPECT_TRUE(none.indices.empty());
  EXPECT_FALSE(none.sub.has_value());
}

TEST(LineSlice, CantorKBottomRow) {
  for (int k = 5; k <= 9; ++k) {
    const LineSlice s = line_invariant_subifs(Ifs::cantor_k(k), Angle(0.0), 0.0);
    EXPECT_EQ(s.indices.size(), static_cast<std::size_t>(k - 2));
    EXPECT_NEAR(s.dimension, std::log(k - 2.0) / std::log(static_cast<double>(k)), 1e-12);
  }
}

TEST(Words, FormatIsOneBased) {
  EXPECT_EQ(format_word(Word{0, 3, 1}), "(1,4,2)");
}
