#pragma once

#include <span>
#include <vector>

#include "lipgraph/geometry.hpp"

namespace lipgraph {

/// One level of a nested family: every level-(n-1) set has `branching`
/// children, all of diameter between `min_diameter` and `max_diameter`.
struct NestedLevel {
  double branching = 1.0;
  double max_diameter = 0.0;
  double min_diameter = 0.0;
};

struct NestedStats {
  std::vector<NestedLevel> levels;  // levels[0] is level 1
  /// If positive, min/max diameter ratios are required to exceed it.
  double uniformity = 0.0;
};

/// Uniform family: v children per set, diameters d0 * ratio^n.
NestedStats uniform_nested_stats(double branching, double d0, double ratio, int depth);

struct HataBound {
  /// Lower-bound surrogate for the dimension of the limit set.
  double bound = 0.0;
  /// log(v_1 ... v_{n-1}) / -log d_n for n = 1..L.
  std::vector<double> ratios;
  /// log v_{n-1} / log(d_{n-1} / d_n) for n = 2..L.
  std::vector<double> increments;
  /// Minimum of `ratios` over the last half of the levels.
  double ratio_tail_min = 0.0;
};

/// The limit inferior of the ratio sequence is at least that of the
/// increments; `bound` is the minimum increment over the last half of levels.
HataBound hata_bound(const NestedStats& stats);

struct BetaCube {
  int depth = 0;
  long i = 0;
  long j = 0;
  double beta = 0.0;
};

struct BetaReport {
  std::vector<BetaCube> cubes;
  std::vector<double> increments;    // sum over depth-k cubes of beta(3Q)^2 diam(Q)
  std::vector<double> partial_sums;  // running totals
};

/// Beta numbers of the piece vertices over dyadic cubes of depth 0..max_depth.
/// beta(3Q) = (min width of the samples in 3Q) / (2 diam(3Q)).
BetaReport beta_sum(std::span<const ConvexPolygon> pieces, int max_depth);

}  // namespace lipgraph
