#include <gtest/gtest.h>

#include <cmath>

#include "lipgraph/cantor4.hpp"
#include "lipgraph/error.hpp"
#include "lipgraph/graph.hpp"

using namespace lipgraph;

TEST(Frame, RoundTrip) {
  const Frame f(0.7);
  const Point p{0.3, -1.2};
  const Point q = f.to_world(f.to_frame(p));
  EXPECT_NEAR(q.x, p.x, 1e-15);
  EXPECT_NEAR(q.y, p.y, 1e-15);
}

TEST(PLGraph, EvaluationAndSlope) {
  const PLGraph g(Frame(0.0), {0.0, 1.0, 3.0}, {0.0, 2.0, 1.0});
  EXPECT_DOUBLE_EQ(g(0.5), 1.0);
  EXPECT_DOUBLE_EQ(g(2.0), 1.5);
  EXPECT_DOUBLE_EQ(g.lipschitz(), 2.0);
}

TEST(Graph, AdhocDepthOneHypotheses) {
  const C4Family fam = adhoc_family(1);
  const auto levels = family_levels(fam, 6);
  const Frame frame(fam.theta);
  const GraphHypotheses hyp = verify_hypotheses(levels, frame, 0.25);
  EXPECT_LE(hyp.lambda, 3.0 + 1e-9);
  EXPECT_LE(hyp.c, std::sqrt(2.0) + 1e-9);
  const GraphBuild b = build_graph(levels, frame, hyp);
  EXPECT_LE(b.measured_lipschitz, 3.0 + 1e-9);
  for (std::size_t n = 0; n + 1 < levels.size(); ++n) {
    EXPECT_LE(b.sup_differences[n], std::sqrt(2.0) * std::pow(4.0, -static_cast<double>(n + 1)) + 1e-12);
  }
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const double radius = std::sqrt(2.0) * std::pow(4.0, -static_cast<double>(n + 1));
    EXPECT_TRUE(containment_check(levels[n], b.graphs[n], radius).pass);
  }
}

TEST(Graph, OverlappingPiecesAreRejected) {
  const Level lv{ConvexPolygon::square({0, 0}, 1.0), ConvexPolygon::square({0.5, 2.0}, 1.0)};
  const std::vector<Level> levels{lv};
  try {
    verify_hypotheses(levels, Frame(0.0));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Graph);
  }
}

TEST(Graph, AbuttingPiecesShareAPoint) {
  const Level lv{ConvexPolygon::square({0, 0}, 1.0), ConvexPolygon::square({1.0, 0.0}, 1.0)};
  const std::vector<Level> levels{lv};
  const GraphHypotheses hyp = verify_hypotheses(levels, Frame(0.0));
  EXPECT_NEAR(hyp.lambda, 1.0, 1e-12);
  const GraphBuild b = build_graph(levels, Frame(0.0), hyp);
  EXPECT_NEAR(b.measured_lipschitz, 0.0, 1e-12);
}

TEST(Graph, MissingParentFailsNesting) {
  const std::vector<Level> levels{{ConvexPolygon::square({0, 0}, 1.0)}, {ConvexPolygon::square({2, 2}, 0.25)}};
  try {
    verify_hypotheses(levels, Frame(0.0));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Hypothesis);
  }
}

TEST(Graph, ContainmentReportsWitness) {
  const PLGraph g(Frame(0.0), {0.0, 1.0}, {0.0, 0.0});
  const std::vector<ConvexPolygon> far{ConvexPolygon::square({0.2, 0.5}, 0.1)};
  const Containment c = containment_check(far, g, 0.1);
  EXPECT_FALSE(c.pass);
  ASSERT_TRUE(c.witness_piece.has_value());
  EXPECT_NEAR(c.max_distance, 0.6, 1e-12);
}
