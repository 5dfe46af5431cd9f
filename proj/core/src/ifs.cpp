#include "lipgraph/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lipgraph/error.hpp"

namespace lipgraph {

RationalAngle RationalAngle::make(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::Input, "rational rotation with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num %= 2 * den;
  if (num < 0) num += 2 * den;
  return {num, den};
}

double RationalAngle::radians() const {
  return kPi * static_cast<double>(num) / static_cast<double>(den);
}

RationalAngle operator+(RationalAngle a, RationalAngle b) {
  const std::int64_t g = std::gcd(a.den, b.den);
  const std::int64_t den = a.den / g * b.den;
  return RationalAngle::make(a.num * (den / a.den) + b.num * (den / b.den), den);
}

SimilarityMap SimilarityMap::make(double scale, double rotation, Point shift) {
  if (!(scale > 0.0 && scale < 1.0)) {
    fail(ErrorKind::Input, "similarity ratio must lie in (0, 1), got " + std::to_string(scale));
  }
  SimilarityMap m;
  m.scale = scale;
  m.rotation = rotation;
  m.shift = shift;
  if (rotation == 0.0) m.rotation_pi = RationalAngle{};
  return m;
}

SimilarityMap SimilarityMap::make(double scale, RationalAngle rotation, Point shift) {
  SimilarityMap m = make(scale, rotation.radians(), shift);
  m.rotation_pi = RationalAngle::make(rotation.num, rotation.den);
  return m;
}

SimilarityMap SimilarityMap::identity() {
  SimilarityMap m;
  m.rotation_pi = RationalAngle{};
  return m;
}

Point SimilarityMap::apply(Point p) const {
  return scale * rotate(p, rotation) + shift;
}

ConvexPolygon SimilarityMap::apply(const ConvexPolygon& polygon) const {
  const double c = scale * std::cos(rotation);
  const double s = scale * std::sin(rotation);
  return polygon.mapped([&](Point p) {
    return Point{c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y};
  });
}

SimilarityMap compose(const SimilarityMap& outer, const SimilarityMap& inner) {
  SimilarityMap m;
  m.scale = outer.scale * inner.scale;
  m.rotation = outer.rotation + inner.rotation;
  m.shift = outer.apply(inner.shift);
  if (outer.rotation_pi && inner.rotation_pi) {
    m.rotation_pi = *outer.rotation_pi + *inner.rotation_pi;
    m.rotation = m.rotation_pi->radians();
  } else {
    m.rotation = std::remainder(m.rotation, 2.0 * kPi);
  }
  return m;
}

Point fixed_point(const SimilarityMap& map) {
  // Solve (I - s R) x = shift.
  const double a = 1.0 - map.scale * std::cos(map.rotation);
  const double b = map.scale * std::sin(map.rotation);
  // Matrix [[a, b], [-b, a]].
  const double det = a * a + b * b;
  return {(a * map.shift.x - b * map.shift.y) / det, (b * map.shift.x + a * map.shift.y) / det};
}

std::string format_word(const Word& word) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out << ',';
    out << word[i] + 1;
  }
  out << ')';
  return out.str();
}

double similarity_dimension(std::span<const double> scales) {
  if (scales.empty()) fail(ErrorKind::Precondition, "similarity dimension of an empty system");
  for (double r : scales) {
    if (!(r > 0.0 && r < 1.0)) fail(ErrorKind::Precondition, "ratios must lie in (0, 1)");
  }
  auto excess = [&](double s) {
    double total = 0.0;
    for (double r : scales) total += std::pow(r, s);
    return total - 1.0;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (excess(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return excess(lo) == 0.0 ? lo : 0.5 * (lo + hi);
}

Ifs::Ifs(std::vector<SimilarityMap> maps, bool osc) : maps_(std::move(maps)), osc_(osc) {
  if (maps_.empty()) fail(ErrorKind::Input, "an IFS needs at least one map");
  for (const SimilarityMap& m : maps_) {
    if (!(m.scale > 0.0 && m.scale < 1.0)) {
      fail(ErrorKind::Input, "similarity ratio must lie in (0, 1)");
    }
  }
  std::stable_sort(maps_.begin(), maps_.end(),
                   [](const SimilarityMap& a, const SimilarityMap& b) { return a.scale < b.scale; });
}

Ifs Ifs::cantor4() { return cantor_k(4); }

Ifs Ifs::cantor_k(int k) {
  if (k < 4) fail(ErrorKind::Input, "cantor_k needs k >= 4");
  const double side = 1.0 / k;
  const double far = 1.0 - side;
  std::vector<SimilarityMap> maps;
  auto add = [&](double x, double y) { maps.push_back(SimilarityMap::make(side, RationalAngle{}, {x, y})); };
  add(0.0, 0.0);
  add(0.0, far);
  for (int i = 1; i <= k - 4; ++i) add(i * far / (k - 3), 0.0);
  add(far, 0.0);
  add(far, far);
  return Ifs(std::move(maps), true);
}

std::vector<double> Ifs::scales() const {
  std::vector<double> out;
  out.reserve(maps_.size());
  for (const SimilarityMap& m : maps_) out.push_back(m.scale);
  return out;
}

double Ifs::similarity_dimension() const {
  const std::vector<double> s = scales();
  return lipgraph::similarity_dimension(s);
}

bool Ifs::rotation_free() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const SimilarityMap& m) {
    return std::abs(std::remainder(m.rotation, 2.0 * kPi)) <= kGeomTol;
  });
}

SimilarityMap compose(const Ifs& ifs, std::span<const std::uint16_t> word) {
  SimilarityMap m = SimilarityMap::identity();
  for (std::uint16_t j : word) m = compose(m, ifs[j]);
  return m;
}

namespace {

// Centre p and radius R with f_j(B(p, R)) inside B(p, R) for all j.
std::pair<Point, double> invariant_ball(const Ifs& ifs) {
  Point p;
  for (const SimilarityMap& m : ifs.maps()) p = p + fixed_point(m);
  p = (1.0 / static_cast<double>(ifs.size())) * p;
  double radius = 0.0;
  for (const SimilarityMap& m : ifs.maps()) {
    radius = std::max(radius, norm(m.apply(p) - p) / (1.0 - m.scale));
  }
  return {p, radius};
}

}  // namespace

AttractorHull attractor_hull(const Ifs& ifs, int depth) {
  if (depth < 0) fail(ErrorKind::Input, "attractor_hull depth must be non-negative");
  const std::size_t n = ifs.size();
  // Homotheties: every extreme point of the attractor is a fixed point.
  if (ifs.rotation_free()) depth = 0;
  while (depth > 0 && std::pow(static_cast<double>(n), depth) * n > 2e5) --depth;

  std::vector<SimilarityMap> level{SimilarityMap::identity()};
  for (int d = 0; d < depth; ++d) {
    std::vector<SimilarityMap> next;
    next.reserve(level.size() * n);
    for (const SimilarityMap& w : level) {
      for (const SimilarityMap& f : ifs.maps()) next.push_back(compose(w, f));
    }
    level = std::move(next);
  }
  std::vector<Point> pts;
  pts.reserve(level.size() * n);
  for (const SimilarityMap& w : level) {
    for (const SimilarityMap& f : ifs.maps()) pts.push_back(w.apply(fixed_point(f)));
  }
  if (depth == 0 && ifs.rotation_free()) return {ConvexPolygon::hull(pts), 0.0};
  const double radius = invariant_ball(ifs).second;
  return {ConvexPolygon::hull(pts), std::pow(ifs.max_scale(), depth) * 2.0 * radius};
}

ConvexPolygon invariant_hull(const Ifs& ifs, int iterations) {
  constexpr int kSides = 64;
  const Point centre = invariant_ball(ifs).first;
  // Circumradius so that each image of the polygon sits inside its inscribed disc.
  const double inner = std::cos(kPi / kSides);
  double rho = 0.0;
  for (const SimilarityMap& m : ifs.maps()) {
    rho = std::max(rho, norm(m.apply(centre) - centre) / (inner - m.scale));
  }
  rho = std::max(rho * (1.0 + 1e-9), 1e-12);
  std::vector<Point> ring;
  for (int i = 0; i < kSides; ++i) {
    const double a = 2.0 * kPi * i / kSides;
    ring.push_back(centre + rho * Point{std::cos(a), std::sin(a)});
  }
  ConvexPolygon poly = ConvexPolygon::hull(ring);
  for (int it = 0; it < iterations; ++it) {
    std::vector<Point> pts;
    for (const SimilarityMap& m : ifs.maps()) {
      for (const Point& v : poly.vertices()) pts.push_back(m.apply(v));
    }
    ConvexPolygon next = ConvexPolygon::hull(pts);
    if (next.size() > 4096) break;
    poly = std::move(next);
  }
  return poly;
}

std::vector<ConvexPolygon> Generation::polygons() const {
  std::vector<ConvexPolygon> out;
  out.reserve(pieces.size());
  for (const Piece& p : pieces) out.push_back(p.polygon);
  return out;
}

Generation generation(const Ifs& ifs, const ConvexPolygon& seed, int n, std::size_t max_pieces) {
  if (n < 0) fail(ErrorKind::Input, "generation level must be non-negative");
  const double count = std::pow(static_cast<double>(ifs.size()), n);
  if (count > static_cast<double>(max_pieces)) {
    fail(ErrorKind::Resource, "generation " + std::to_string(n) + " has " +
                                  std::to_string(count) + " pieces, above the cap of " +
                                  std::to_string(max_pieces));
  }
  std::vector<std::pair<Word, SimilarityMap>> level{{Word{}, SimilarityMap::identity()}};
  for (int d = 0; d < n; ++d) {
    std::vector<std::pair<Word, SimilarityMap>> next;
    next.reserve(level.size() * ifs.size());
    for (const auto& [word, map] : level) {
      for (std::size_t j = 0; j < ifs.size(); ++j) {
        Word w = word;
        w.push_back(static_cast<std::uint16_t>(j));
        next.emplace_back(std::move(w), compose(map, ifs[j]));
      }
    }
    level = std::move(next);
  }
  Generation gen;
  gen.level = n;
  gen.seed = seed;
  gen.pieces.reserve(level.size());
  for (auto& [word, map] : level) {
    ConvexPolygon poly = map.apply(seed);
    gen.pieces.push_back({std::move(word), map, std::move(poly)});
  }
  return gen;
}

OverlapReport overlap_index(const Generation& gen) {
  struct Box {
    double x0, x1, y0, y1;
  };
  const std::size_t n = gen.pieces.size();
  std::vector<Box> boxes(n);
  for (std::size_t i = 0; i < n; ++i) {
    Box b{1e300, -1e300, 1e300, -1e300};
    for (const Point& p : gen.pieces[i].polygon.vertices()) {
      b.x0 = std::min(b.x0, p.x);
      b.x1 = std::max(b.x1, p.x);
      b.y0 = std::min(b.y0, p.y);
      b.y1 = std::max(b.y1, p.y);
    }
    boxes[i] = b;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return boxes[a].x0 < boxes[b].x0; });

  std::vector<std::vector<std::size_t>> neighbours(n);
  OverlapReport report;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = order[a];
    for (std::size_t b = a + 1; b < n && boxes[order[b]].x0 < boxes[i].x1; ++b) {
      const std::size_t j = order[b];
      if (boxes[j].y0 >= boxes[i].y1 || boxes[i].y0 >= boxes[j].y1) continue;
      const ConvexPolygon& pi = gen.pieces[i].polygon;
      const ConvexPolygon& pj = gen.pieces[j].polygon;
      const double guard = kGeomTol * std::min(pi.area(), pj.area());
      if (intersection_area(pi, pj) > guard) {
        neighbours[i].push_back(j);
        neighbours[j].push_back(i);
        ++report.overlapping_pairs;
      }
    }
  }
  std::vector<int> colour(n, -1);
  int colours = n ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> used(neighbours[i].size() + 1, false);
    for (std::size_t j : neighbours[i]) {
      if (colour[j] >= 0 && static_cast<std::size_t>(colour[j]) < used.size()) used[colour[j]] = true;
    }
    int c = 0;
    while (used[c]) ++c;
    colour[i] = c;
    colours = std::max(colours, c + 1);
  }
  report.overlap_index = colours;
  report.nested = std::all_of(gen.pieces.begin(), gen.pieces.end(),
                              [&](const Piece& p) { return gen.seed.contains(p.polygon); });
  return report;
}

LineSlice line_invariant_subifs(const Ifs& ifs, Angle direction, double offset) {
  const Point normal = direction.normal();
  const Point on_line = offset * normal;
  LineSlice slice;
  std::vector<SimilarityMap> kept;
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    const SimilarityMap& m = ifs[i];
    if (std::abs(std::sin(m.rotation)) > kGeomTol) continue;
    if (std::abs(dot(m.apply(on_line), normal) - offset) > kGeomTol) continue;
    slice.indices.push_back(i);
    kept.push_back(m);
  }
  if (!kept.empty()) {
    slice.sub.emplace(std::move(kept), ifs.osc());
    slice.dimension = slice.sub->similarity_dimension();
  }
  return slice;
}

}  // namespace lipgraph
