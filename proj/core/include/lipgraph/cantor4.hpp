#pragma once

#include <array>
#include <vector>

#include "lipgraph/geometry.hpp"
#include "lipgraph/graph.hpp"
#include "lipgraph/ifs.hpp"

namespace lipgraph {

/// A word family of the four-corner set together with its graph frame.
struct C4Family {
  int m = 0;
  std::vector<Word> words;  // lexicographic
  Ifs sub_ifs;
  double theta = 0.0;       // frame angle
  double lambda = 0.0;      // closed-form Lipschitz constant
  double dimension = 0.0;   // similarity dimension of `sub_ifs`
};

/// S_1 = {1, 2, 4}; S_{m+1} adds (3, k_2..k_m, k_{m+1}) with k_j in {1, 3}, k_{m+1} in {2, 4}.
C4Family adhoc_family(int m);
/// All words of length m ending in 1 or 3.
C4Family generic_family(int m);

double adhoc_tan_theta(int m);
double adhoc_lambda(int m);
/// Root of 2 x + x sum_{k<m} (2 x)^k = 1 with x = 4^-s.
double adhoc_dimension(int m);
double generic_theta(int m);
double generic_lambda(int m);
double generic_dimension(int m);

/// Smallest m with adhoc_dimension(m) >= 1 - eps.
int adhoc_depth_for(double eps);
/// m with m - 1 < 1 / (2 eps) <= m.
int generic_depth_for(double eps);

/// Constant c_L = 2 (1 - s_1) and envelope (5/3) (2 c_L)^2 eps^-2.
double adhoc_dimension_constant();
double adhoc_envelope(double eps);
/// (41/36) 2^(1/eps); bounds lambda_m at eps = 1/(2m).
double generic_envelope(double eps);

struct SimDimRow {
  int m = 0;
  double dimension = 0.0;
  double scaled_gap = 0.0;  // 2^m (1 - s_m)
};

struct SimDimTable {
  std::vector<SimDimRow> rows;
  double c = 0.0;       // max scaled gap
  bool stable = false;  // scaled gaps non-increasing
};

SimDimTable simdim_bound_check(int m_lo, int m_hi);

/// Level n of the family: the n-th generation of `sub_ifs` on the unit square.
std::vector<Level> family_levels(const C4Family& family, int depth);

/// Projection lengths onto the diagonals y = x and y = -x.
struct DaviesValue {
  double m_plus = 0.0;
  double m_minus = 0.0;
  double m = 0.0;  // mean of the two
};

DaviesValue davies_m(const ConvexPolygon& set);

/// Rectangle with sides along the diagonals.
struct DiagonalRect {
  Point center;
  double half_plus = 0.0;   // half-length along (1, 1) / sqrt 2
  double half_minus = 0.0;  // half-length along (-1, 1) / sqrt 2
  ConvexPolygon polygon() const;
};

/// The four corner grandchildren (side / 4) of an axis-parallel square.
std::array<ConvexPolygon, 4> corner_children(const ConvexPolygon& square);

struct DaviesCheck {
  double lhs = 0.0;  // m(E)
  double rhs = 0.0;  // sum over i of m(E cap Q^i)
  double margin = 0.0;
  bool pass = false;
};

DaviesCheck davies_inequality_check(const DiagonalRect& rect, const ConvexPolygon& square);

struct MeasureBracket {
  double lower = 0.0;  // projection length at arctan(1/2)
  double upper = 0.0;  // sum of piece diameters
};

MeasureBracket c4_measure_bracket(int n);

}  // namespace lipgraph
