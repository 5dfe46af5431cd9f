#include <gtest/gtest.h>

#include <cmath>

#include "lipgraph/error.hpp"
#include "lipgraph/rotational.hpp"
#include "oracles.hpp"

using namespace lipgraph;

namespace {

Ifs quarter_turn() {
  const RationalAngle none{};
  return Ifs({SimilarityMap::make(0.25, none, {0.0, 0.0}), SimilarityMap::make(0.25, none, {0.0, 0.75}),
              SimilarityMap::make(0.25, none, {0.75, 0.0}),
              SimilarityMap::make(0.25, RationalAngle::make(1, 2), {1.0, 0.75})},
             true);
}

const ConvexPolygon kUnit = ConvexPolygon::square({0, 0}, 1.0);

}  // namespace

TEST(Partition, SplitsByRotation) {
  const Ifs ifs({SimilarityMap::make(0.5, RationalAngle{}, {0, 0}), SimilarityMap::make(0.5, RationalAngle::make(1, 1), {1, 1})});
  const std::vector<Word> words{{0}, {1}, {0, 1}, {1, 1}, {0, 0}};
  const auto classes = partition_by_rotation(ifs, words);
  ASSERT_EQ(classes.size(), 2u);
  std::size_t total = 0;
  for (const auto& [rot, ws] : classes) {
    total += ws.size();
    for (const Word& w : ws) EXPECT_EQ(*compose(ifs, w).rotation_pi, (RationalAngle{rot.first, rot.second}));
  }
  EXPECT_EQ(total, words.size());
}

TEST(Uniformize, CantorAtHalf) {
  const Uifs u = uniformize(Ifs::cantor4(), 0.5);
  EXPECT_EQ(u.kappa, 1);
  EXPECT_EQ(u.words.size(), 2u);
  EXPECT_NEAR(u.scale, 0.25, 1e-15);
  EXPECT_NEAR(u.gamma, 0.5, 1e-12);
  EXPECT_TRUE(u.already_uniform);
}

TEST(Uniformize, QuarterTurnGammaInWindow) {
  const Uifs u = uniformize(quarter_turn(), 0.5);
  EXPECT_GE(u.gamma, 0.5 - 1e-12);
  EXPECT_LE(u.gamma, 0.75 + 1e-12);
  std::vector<double> r(u.words.size(), u.scale);
  EXPECT_NEAR(u.gamma, oracle::similarity_dimension(r), 1e-12);
  for (const SimilarityMap& m : u.maps.maps()) {
    EXPECT_NEAR(m.scale, u.scale, 1e-15);
    EXPECT_EQ(*m.rotation_pi, u.rotation);
  }
}

TEST(Uniformize, MixedScalesAreBalanced) {
  const RationalAngle none{};
  const Ifs ifs({SimilarityMap::make(0.5, none, {0, 0}), SimilarityMap::make(0.25, none, {0.5, 0}),
                 SimilarityMap::make(0.25, none, {0.75, 0})});
  const Uifs u = uniformize(ifs, 0.5);
  EXPECT_GE(u.gamma, 0.5 - 1e-12);
  EXPECT_LE(u.gamma, 0.75 + 1e-12);
  for (const SimilarityMap& m : u.maps.maps()) EXPECT_NEAR(m.scale, u.scale, 1e-15);
}

TEST(Uniformize, IrrationalRotationIsUnsupported) {
  const RationalAngle none{};
  const Ifs ifs({SimilarityMap::make(0.25, none, {0, 0}), SimilarityMap::make(0.25, none, {0, 0.75}),
                 SimilarityMap::make(0.25, none, {0.75, 0}), SimilarityMap::make(0.25, 1.0, {0.75, 0.75})});
  try {
    uniformize(ifs, 0.5);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(Uniformize, NeedsDimensionOne) {
  try {
    uniformize(Ifs({SimilarityMap::make(0.25, RationalAngle{}, {0, 0})}), 0.5);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(Density, GoldenAngleEquidistributes) {
  const double phi = kPi * (std::sqrt(5.0) - 1.0) / 2.0;
  const AngleSet j({{0.0, 0.9 * kPi}});
  const auto d = rotation_density(0.0, phi, j, 2000);
  EXPECT_NEAR(d.back(), 0.9, 0.05);
  for (int n : {10, 100, 1000, 2000}) {
    EXPECT_NEAR(d[static_cast<std::size_t>(n - 1)], oracle::orbit_density(0.0, phi, 0.0, 0.9 * kPi, n), 1e-12);
  }
}

TEST(Density, RationalOrbitIsPeriodic) {
  const AngleSet j({{0.0, 0.5 * kPi}});
  const auto d = rotation_density(0.3, kPi / 3.0, j, 300);
  for (int k = 1; k <= 100; ++k) EXPECT_NEAR(d[static_cast<std::size_t>(3 * k - 1)], d[2], 1e-12);
}

TEST(Density, AlternatingQuarterTurn) {
  const AngleSet j({{0.0, 0.5 * kPi}});
  const auto d = rotation_density(0.1, 0.5 * kPi, j, 6);
  const std::vector<double> want{1.0, 0.5, 2.0 / 3.0, 0.5, 0.6, 0.5};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(d[i], want[i], 1e-12);
}

TEST(GreedySeparated, KeepsMaximalFamily) {
  const std::vector<Interval> iv{{0, 1}, {1.05, 2}, {2.5, 3}, {0.2, 0.4}};
  const auto kept = greedy_separated(iv, 0.1);
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t b = a + 1; b < kept.size(); ++b) EXPECT_GT(gap(iv[kept[a]], iv[kept[b]]), 0.1);
  }
  EXPECT_EQ(kept.size(), 3u);
}

TEST(Plan, QuarterTurnSeparatedAtEveryLevel) {
  const double eps = 0.5;
  const Uifs u = uniformize(quarter_turn(), 0.5);
  const AngleGrid grid(256);
  const GoodAngles good = good_angle_set(u, kUnit, 1, eps, grid);
  const std::vector<AngleSet> sets{good.set};
  const PersistentAngle pa = find_persistent_angle(u, sets, eps, 20, grid, good.counts);
  EXPECT_GE(pa.min_density, 1.0 - eps / 2.0);
  const NestedPlan plan = build_nested_plan(u, kUnit, pa.theta, eps, 20);
  ASSERT_EQ(plan.levels.size(), 20u);
  for (const PlanLevel& l : plan.levels) {
    EXPECT_EQ(l.chosen.size(), u.words.size());
    EXPECT_GT(l.min_gap, u.scale * (1.0 - 1e-9));
    EXPECT_EQ(l.good, static_cast<double>(l.chosen.size()) >= std::pow(u.scale, -(1.0 - eps / 2.0)));
  }
  for (int n = 1; n <= 2; ++n) EXPECT_GE(plan_separation(u, kUnit, plan, n), 1.0 - 1e-9);
  const RotationalCertificate c = certify_rotational(plan, eps, kUnit, quarter_turn());
  EXPECT_TRUE(c.dimension_pass);
  EXPECT_TRUE(c.lipschitz_pass);
  EXPECT_GE(c.hata.bound, 1.0 - eps - 0.05);
}

TEST(Plan, LargeEpsilonLevelsAreGood) {
  const Uifs u = uniformize(quarter_turn(), 0.5);
  const NestedPlan plan = build_nested_plan(u, kUnit, 0.339, 0.9, 8);
  for (const PlanLevel& l : plan.levels) EXPECT_TRUE(l.good);
  double log_m = 0.0;
  for (std::size_t n = 0; n < plan.levels.size(); ++n) {
    log_m += std::log(static_cast<double>(plan.levels[n].chosen.size()));
    EXPECT_NEAR(plan.log_components[n], log_m, 1e-12);
  }
}

TEST(Plan, PiecesNestInsideParents) {
  const Uifs u = uniformize(quarter_turn(), 0.5);
  const NestedPlan plan = build_nested_plan(u, kUnit, 0.339, 0.5, 3);
  const auto l1 = plan_pieces(u, kUnit, plan, 1);
  const auto l2 = plan_pieces(u, kUnit, plan, 2);
  for (const ConvexPolygon& child : l2) {
    bool inside = false;
    for (const ConvexPolygon& parent : l1) inside = inside || parent.contains(child);
    EXPECT_TRUE(inside);
  }
}
