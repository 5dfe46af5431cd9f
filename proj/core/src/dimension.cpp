#include "lipgraph/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "lipgraph/error.hpp"

namespace lipgraph {

NestedStats uniform_nested_stats(double branching, double d0, double ratio, int depth) {
  NestedStats stats;
  for (int n = 1; n <= depth; ++n) {
    const double d = d0 * std::pow(ratio, n);
    stats.levels.push_back({branching, d, d});
  }
  return stats;
}

HataBound hata_bound(const NestedStats& stats) {
  const auto& lv = stats.levels;
  if (lv.empty()) fail(ErrorKind::Precondition, "hata_bound needs at least one level");
  for (std::size_t n = 0; n < lv.size(); ++n) {
    const NestedLevel& l = lv[n];
    if (!(l.branching >= 1.0)) fail(ErrorKind::Precondition, "branching numbers must be >= 1");
    if (!(l.min_diameter > 0.0 && l.max_diameter < 1.0 && l.min_diameter <= l.max_diameter)) {
      fail(ErrorKind::Precondition, "diameters must satisfy 0 < d_n <= D_n < 1");
    }
    if (n > 0 && !(l.max_diameter < lv[n - 1].max_diameter)) {
      fail(ErrorKind::Precondition, "maximal diameters must decrease strictly");
    }
    if (stats.uniformity > 0.0 && !(l.min_diameter / l.max_diameter > stats.uniformity)) {
      fail(ErrorKind::Precondition, "level " + std::to_string(n + 1) + " violates d_n / D_n > b");
    }
  }
  HataBound out;
  double log_branching = 0.0;  // log(v_1 ... v_{n-1})
  for (std::size_t n = 0; n < lv.size(); ++n) {
    out.ratios.push_back(log_branching / -std::log(lv[n].min_diameter));
    if (n > 0) {
      out.increments.push_back(std::log(lv[n - 1].branching) /
                               std::log(lv[n - 1].min_diameter / lv[n].min_diameter));
    }
    log_branching += std::log(lv[n].branching);
  }
  const std::size_t first = out.ratios.size() / 2;
  out.ratio_tail_min = *std::min_element(out.ratios.begin() + static_cast<long>(first), out.ratios.end());
  if (out.increments.empty()) {
    out.bound = out.ratio_tail_min;
  } else {
    // increments[k] belongs to level k + 2.
    const std::size_t skip = first >= 1 ? first - 1 : 0;
    out.bound = *std::min_element(out.increments.begin() + static_cast<long>(skip), out.increments.end());
  }
  return out;
}

BetaReport beta_sum(std::span<const ConvexPolygon> pieces, int max_depth) {
  if (max_depth < 0) fail(ErrorKind::Input, "beta_sum depth must be non-negative");
  std::vector<Point> samples;
  for (const ConvexPolygon& p : pieces) {
    samples.insert(samples.end(), p.vertices().begin(), p.vertices().end());
  }
  BetaReport out;
  double total = 0.0;
  for (int k = 0; k <= max_depth; ++k) {
    const double side = std::ldexp(1.0, -k);
    auto cell = [side](double t) { return static_cast<long>(std::floor(t / side)); };
    std::map<std::pair<long, long>, std::vector<Point>> buckets;
    for (const Point& p : samples) buckets[{cell(p.x), cell(p.y)}].push_back(p);

    // Cubes whose tripled cube meets the sample set.
    std::map<std::pair<long, long>, bool> cubes;
    for (const auto& [key, pts] : buckets) {
      for (long di = -1; di <= 1; ++di) {
        for (long dj = -1; dj <= 1; ++dj) cubes[{key.first + di, key.second + dj}] = true;
      }
    }
    const double diam3 = 3.0 * side * std::sqrt(2.0);
    const double diam = side * std::sqrt(2.0);
    double level = 0.0;
    for (const auto& [key, unused] : cubes) {
      (void)unused;
      std::vector<Point> local;
      for (long di = -1; di <= 1; ++di) {
        for (long dj = -1; dj <= 1; ++dj) {
          auto it = buckets.find({key.first + di, key.second + dj});
          if (it != buckets.end()) local.insert(local.end(), it->second.begin(), it->second.end());
        }
      }
      const double width = min_width(ConvexPolygon::hull(local)).width;
      const double beta = width / (2.0 * diam3);
      out.cubes.push_back({k, key.first, key.second, beta});
      level += beta * beta * diam;
    }
    total += level;
    out.increments.push_back(level);
    out.partial_sums.push_back(total);
  }
  return out;
}

}  // namespace lipgraph
