#include <gtest/gtest.h>

#include <cmath>

#include "lipgraph/error.hpp"
#include "lipgraph/subifs.hpp"
#include "oracles.hpp"

using namespace lipgraph;

TEST(ChooseDepth, CantorAtHalf) {
  const DepthChoice d = choose_depth(0.5, 4, 0.25);
  EXPECT_EQ(d.m, 3);
  EXPECT_NEAR(d.c2, 3.0 / std::log(4.0), 1e-15);
  EXPECT_NEAR(d.c0, d.c2 * std::log(64.0), 1e-12);
}

TEST(ChooseDepth, GrowsAsEpsilonShrinks) {
  int previous = 0;
  for (double eps : {0.9, 0.7, 0.5, 0.3, 0.2, 0.1}) {
    const int m = choose_depth(eps, 4, 0.25).m;
    EXPECT_GE(m, previous);
    previous = m;
  }
}

TEST(ChooseDepth, RejectsBadEpsilon) {
  EXPECT_THROW(choose_depth(0.0, 4, 0.25), Error);
  EXPECT_THROW(choose_depth(1.0, 4, 0.25), Error);
}

TEST(Extract, CantorDepthOne) {
  const SubIfs s = extract_separated_subifs(Ifs::cantor4(), 1);
  EXPECT_NEAR(s.delta, 1.0 / 64.0, 1e-15);  // nu (r_N / 4N)^1
  EXPECT_NEAR(s.nu, 1.0, 1e-15);
  EXPECT_GE(s.words.size(), 2u);
  EXPECT_GE(s.dimension, 0.5 - 1e-12);
  for (std::size_t a = 0; a < s.intervals.size(); ++a) {
    for (std::size_t b = a + 1; b < s.intervals.size(); ++b) EXPECT_GT(gap(s.intervals[a], s.intervals[b]), s.delta);
  }
}

TEST(Extract, CantorDepthThreeCertificate) {
  const SubIfs s = extract_separated_subifs(Ifs::cantor4(), 3);
  std::vector<double> r(s.words.size(), std::pow(4.0, -3));
  EXPECT_NEAR(s.dimension, oracle::similarity_dimension(r), 1e-12);
  EXPECT_NEAR(s.lipschitz_bound, s.diameter / s.delta, 1e-9 * s.lipschitz_bound);
  const SubIfsCertificate c = certify(s, 0.5, 4, 0.25);
  EXPECT_TRUE(c.dimension_pass);
  EXPECT_TRUE(c.lipschitz_pass);
  EXPECT_TRUE(c.pass());
}

TEST(Extract, SingleMapIsDegenerate) {
  const Ifs one({SimilarityMap::make(0.5, RationalAngle{}, {0.0, 0.0})});
  const SubIfs s = extract_separated_subifs(one, 1);
  EXPECT_TRUE(s.degenerate);
  EXPECT_EQ(s.words.size(), 1u);
  EXPECT_DOUBLE_EQ(s.dimension, 0.0);
}

TEST(Extract, RotationIsUnsupported) {
  const Ifs rot({SimilarityMap::make(0.5, RationalAngle::make(1, 2), {0.0, 0.0}),
                 SimilarityMap::make(0.5, RationalAngle{}, {0.5, 0.5})});
  try {
    extract_separated_subifs(rot, 1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}
