#include "lipgraph/subifs.hpp"

#include <algorithm>
#include <cmath>

#include "lipgraph/error.hpp"

namespace lipgraph {

DepthChoice choose_depth(double epsilon, std::size_t n_maps, double r_max) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::Input, "epsilon must lie in (0, 1)");
  if (n_maps < 1 || !(r_max > 0.0 && r_max < 1.0)) fail(ErrorKind::Input, "invalid IFS data");
  DepthChoice d;
  d.c2 = std::max(1.0, 3.0 / std::log(1.0 / r_max));
  const double target = d.c2 / epsilon * std::log(1.0 / epsilon);
  // Absorb rounding so exact integers are not pushed up by one.
  d.m = std::max(1, static_cast<int>(std::ceil(target - 1e-9)));
  d.c0 = d.c2 * std::log(4.0 * static_cast<double>(n_maps) / r_max);
  return d;
}

SubIfs extract_separated_subifs(const Ifs& ifs, int m, const ExtractOptions& options) {
  if (m < 1) fail(ErrorKind::Input, "sub-IFS depth must be at least 1");
  if (!ifs.rotation_free()) {
    fail(ErrorKind::Unsupported, "separated sub-IFS extraction needs a rotation-free IFS");
  }
  const std::size_t n = ifs.size();
  const double r_max = ifs.max_scale();

  const ConvexPolygon seed = attractor_hull(ifs).hull;
  const double nu = min_width(seed).width;
  const double delta = nu * std::pow(r_max / (4.0 * static_cast<double>(n)), m);

  const Generation gen = generation(ifs, seed, m, options.max_pieces);
  const std::vector<ConvexPolygon> polys = gen.polygons();
  const BestAngle best = best_angle(polys, options.grid);

  std::vector<Interval> long_ivs;
  std::vector<std::size_t> long_idx;
  std::size_t small = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const Interval iv = project(polys[i], best.theta);
    if (iv.length() >= delta) {
      long_ivs.push_back(iv);
      long_idx.push_back(i);
    } else {
      ++small;
    }
  }
  if (long_ivs.empty()) fail(ErrorKind::Extraction, "no projection reaches length delta");

  const std::vector<std::size_t> kept = vitali_select(long_ivs, delta, delta);
  std::vector<SimilarityMap> maps;
  for (std::size_t k : kept) maps.push_back(gen.pieces[long_idx[k]].map);

  SubIfs out{.sub_ifs = Ifs(std::move(maps), ifs.osc())};
  out.m = m;
  out.seed = seed;
  out.nu = nu;
  out.diameter = seed.diameter();
  out.delta = delta;
  out.theta = best.theta;
  out.projection = best.length;
  out.small_pieces = small;
  out.degenerate = seed.degenerate();
  for (std::size_t k : kept) {
    out.words.push_back(gen.pieces[long_idx[k]].word);
    out.intervals.push_back(long_ivs[k]);
  }
  out.dimension = out.sub_ifs.similarity_dimension();

  const double c1 = 16.0 / (3.0 * options.c_m) * options.b *
                    std::log(4.0 * static_cast<double>(n) / r_max) * out.diameter;
  out.s0 = 1.0 - (std::log(static_cast<double>(m)) + std::log(c1)) / (m * std::log(1.0 / r_max));
  out.lipschitz_bound = out.delta > 0.0 ? out.diameter / out.delta : 0.0;
  return out;
}

SubIfsCertificate certify(const SubIfs& sub, double epsilon, std::size_t n_maps, double r_max) {
  const DepthChoice d = choose_depth(epsilon, n_maps, r_max);
  SubIfsCertificate c;
  c.dimension_margin = sub.dimension - (1.0 - epsilon);
  c.dimension_pass = c.dimension_margin >= -kGeomTol;
  c.s0_pass = sub.dimension >= sub.s0 - kGeomTol;
  if (sub.nu > 0.0) {
    c.lipschitz_formula = sub.diameter / sub.nu * std::exp(d.c0 / epsilon * std::log(1.0 / epsilon));
    c.lipschitz_margin = c.lipschitz_formula / sub.lipschitz_bound - 1.0;
    c.lipschitz_pass = c.lipschitz_margin >= -1e-9;
  }
  return c;
}

}  // namespace lipgraph
