#include "lipgraph/cantor4.hpp"

#include <algorithm>
#include <cmath>

#include "lipgraph/error.hpp"
#include "lipgraph/favard.hpp"

namespace lipgraph {

namespace {

void require_depth(int m) {
  if (m < 1 || m > 12) fail(ErrorKind::Input, "family depth must lie in 1..12");
}

Ifs family_ifs(const std::vector<Word>& words) {
  const Ifs c4 = Ifs::cantor4();
  std::vector<SimilarityMap> maps;
  maps.reserve(words.size());
  for (const Word& w : words) maps.push_back(compose(c4, w));
  return Ifs(std::move(maps), true);
}

}  // namespace

double adhoc_tan_theta(int m) {
  const double q = std::pow(4.0, -m);
  const double root = std::sqrt(1.0 - 24.0 / 5.0 * q + 36.0 / 5.0 * q * q);
  return (-3.0 + 12.0 * q + 5.0 * root) / (4.0 - 6.0 * q);
}

double adhoc_lambda(int m) {
  const double q = std::pow(4.0, -m);
  const double root = std::sqrt(1.0 - 24.0 / 5.0 * q + 36.0 / 5.0 * q * q);
  return 5.0 / (6.0 * q) * (1.0 + root - 12.0 / 5.0 * q);
}

double adhoc_dimension(int m) {
  require_depth(m);
  auto excess = [m](double s) {
    const double x = std::pow(4.0, -s);
    double geometric = 0.0;
    for (int k = 0; k < m; ++k) geometric += std::pow(2.0 * x, k);
    return 2.0 * x + x * geometric - 1.0;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double generic_theta(int m) {
  const double q = std::pow(4.0, -m);
  return 0.5 * kPi - 0.5 * (std::atan(2.0 + 12.0 * q) + std::atan(2.0 - 6.0 * q));
}

double generic_lambda(int m) {
  const double a = 5.0 / 18.0 * std::pow(4.0, m) + 2.0 / 3.0 - std::pow(4.0, 1 - m);
  return a + std::sqrt(a * a + 1.0);
}

double generic_dimension(int m) { return 1.0 - 1.0 / (2.0 * m); }

int adhoc_depth_for(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorKind::Input, "epsilon must lie in (0, 1)");
  for (int m = 1; m <= 12; ++m) {
    if (adhoc_dimension(m) >= 1.0 - eps) return m;
  }
  fail(ErrorKind::Resource, "epsilon too small for the ad hoc family (needs m > 12)");
}

int generic_depth_for(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorKind::Input, "epsilon must lie in (0, 1)");
  const int m = static_cast<int>(std::ceil(1.0 / (2.0 * eps) - 1e-9));
  if (m > 12) fail(ErrorKind::Resource, "epsilon too small for the generic family (needs m > 12)");
  return std::max(1, m);
}

double adhoc_dimension_constant() { return 2.0 * (1.0 - adhoc_dimension(1)); }

double adhoc_envelope(double eps) {
  const double c = adhoc_dimension_constant();
  return 5.0 / 3.0 * (2.0 * c) * (2.0 * c) / (eps * eps);
}

double generic_envelope(double eps) { return 41.0 / 36.0 * std::pow(2.0, 1.0 / eps); }

C4Family adhoc_family(int m) {
  require_depth(m);
  std::vector<Word> words{{0}, {1}, {3}};
  // Middles over {1, 3} for the current length, as 0-based letters.
  std::vector<Word> middles{{}};
  for (int step = 1; step < m; ++step) {
    for (const Word& mid : middles) {
      for (std::uint16_t last : {1, 3}) {
        Word w{2};
        w.insert(w.end(), mid.begin(), mid.end());
        w.push_back(last);
        words.push_back(std::move(w));
      }
    }
    std::vector<Word> longer;
    for (const Word& mid : middles) {
      for (std::uint16_t k : {0, 2}) {
        Word w = mid;
        w.push_back(k);
        longer.push_back(std::move(w));
      }
    }
    middles = std::move(longer);
  }
  std::sort(words.begin(), words.end());
  Ifs sub = family_ifs(words);
  const double dim = sub.similarity_dimension();
  return {m, std::move(words), std::move(sub), std::atan(adhoc_tan_theta(m)), adhoc_lambda(m), dim};
}

C4Family generic_family(int m) {
  require_depth(m);
  std::vector<Word> words;
  Word w(static_cast<std::size_t>(m), 0);
  const std::size_t total = std::size_t{1} << (2 * m);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int i = m - 1; i >= 0; --i) {
      w[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(c % 4);
      c /= 4;
    }
    if (w.back() == 0 || w.back() == 2) words.push_back(w);
  }
  Ifs sub = family_ifs(words);
  return {m, std::move(words), std::move(sub), generic_theta(m), generic_lambda(m),
          generic_dimension(m)};
}

SimDimTable simdim_bound_check(int m_lo, int m_hi) {
  if (m_lo < 1 || m_hi < m_lo) fail(ErrorKind::Input, "need 1 <= m_lo <= m_hi");
  SimDimTable table;
  table.stable = true;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double s = adhoc_dimension(m);
    const double gap = std::ldexp(1.0 - s, m);
    if (!table.rows.empty() && gap > table.rows.back().scaled_gap) table.stable = false;
    table.rows.push_back({m, s, gap});
    table.c = std::max(table.c, gap);
  }
  return table;
}

std::vector<Level> family_levels(const C4Family& family, int depth) {
  const ConvexPolygon unit = ConvexPolygon::square({0.0, 0.0}, 1.0);
  std::vector<Level> levels;
  for (int n = 1; n <= depth; ++n) levels.push_back(generation(family.sub_ifs, unit, n).polygons());
  return levels;
}

DaviesValue davies_m(const ConvexPolygon& set) {
  if (set.empty()) return {};
  DaviesValue v;
  v.m_plus = project(set, Angle(0.25 * kPi)).length();
  v.m_minus = project(set, Angle(0.75 * kPi)).length();
  v.m = 0.5 * (v.m_plus + v.m_minus);
  return v;
}

ConvexPolygon DiagonalRect::polygon() const {
  const double s = std::sqrt(0.5);
  const Point u{s, s};
  const Point v{-s, s};
  const Point pts[4] = {center - half_plus * u - half_minus * v, center + half_plus * u - half_minus * v,
                        center + half_plus * u + half_minus * v, center - half_plus * u + half_minus * v};
  return ConvexPolygon::hull(pts);
}

std::array<ConvexPolygon, 4> corner_children(const ConvexPolygon& square) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300;
  for (const Point& p : square.vertices()) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
  }
  const double side = x1 - x0;
  const double g = side / 4.0;
  const double far = side - g;
  return {ConvexPolygon::square({x0, y0}, g), ConvexPolygon::square({x0, y0 + far}, g),
          ConvexPolygon::square({x0 + far, y0}, g), ConvexPolygon::square({x0 + far, y0 + far}, g)};
}

DaviesCheck davies_inequality_check(const DiagonalRect& rect, const ConvexPolygon& square) {
  const ConvexPolygon e = rect.polygon();
  DaviesCheck out;
  out.lhs = davies_m(e).m;
  for (const ConvexPolygon& q : corner_children(square)) out.rhs += davies_m(intersect(e, q)).m;
  out.margin = out.lhs - out.rhs;
  out.pass = out.margin >= -kGeomTol;
  return out;
}

MeasureBracket c4_measure_bracket(int n) {
  const Generation gen = generation(Ifs::cantor4(), ConvexPolygon::square({0.0, 0.0}, 1.0), n);
  const std::vector<ConvexPolygon> polys = gen.polygons();
  MeasureBracket b;
  b.lower = projection_length(polys, Angle(std::atan(0.5)));
  for (const ConvexPolygon& p : polys) b.upper += p.diameter();
  return b;
}

}  // namespace lipgraph
