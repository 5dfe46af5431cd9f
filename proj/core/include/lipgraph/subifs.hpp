#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lipgraph/favard.hpp"
#include "lipgraph/geometry.hpp"
#include "lipgraph/ifs.hpp"

namespace lipgraph {

struct DepthChoice {
  int m = 0;
  double c2 = 0.0;  // max{1, 3 / log(1 / r_N)}
  double c0 = 0.0;  // c2 log(4 N / r_N)
};

/// m = ceil(c2 eps^-1 log eps^-1).
DepthChoice choose_depth(double epsilon, std::size_t n_maps, double r_max);

struct ExtractOptions {
  AngleGrid grid{1024};
  double c_m = 1.0;  // Favard lower-bound constant
  double b = 1.0;    // piece-width constant
  std::size_t max_pieces = kDefaultPieceCap;
};

struct SubIfs {
  int m = 0;
  ConvexPolygon seed{};      // convex hull of the attractor
  double nu = 0.0;            // minimal width of the seed
  double diameter = 0.0;      // of the seed
  double delta = 0.0;         // nu (r_N / 4N)^m
  Angle theta{};              // projection direction
  double projection = 0.0;    // |P_theta C_m|
  std::vector<Word> words{};  // selected, in selection order
  std::vector<Interval> intervals{};
  std::size_t small_pieces = 0;  // projections shorter than delta
  Ifs sub_ifs;
  double dimension = 0.0;
  double s0 = 0.0;
  double lipschitz_bound = 0.0;  // diameter / delta
  bool degenerate = false;       // attractor is a single point
};

/// Long projections of generation m, thinned to a delta-separated family.
SubIfs extract_separated_subifs(const Ifs& ifs, int m, const ExtractOptions& options = {});

struct SubIfsCertificate {
  bool dimension_pass = false;
  double dimension_margin = 0.0;  // dimension - (1 - eps)
  bool s0_pass = false;
  double lipschitz_formula = 0.0;  // (diam / nu) exp(c0 eps^-1 log eps^-1)
  bool lipschitz_pass = false;
  double lipschitz_margin = 0.0;   // formula / bound - 1
  bool pass() const { return dimension_pass && lipschitz_pass; }
};

SubIfsCertificate certify(const SubIfs& sub, double epsilon, std::size_t n_maps, double r_max);

}  // namespace lipgraph
