#include "lipgraph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "lipgraph/error.hpp"

namespace lipgraph {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Extraction: return "extraction";
    case ErrorKind::Uniformization: return "uniformization";
    case ErrorKind::PersistentAngle: return "persistent-angle";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::Graph: return "graph";
  }
  return "unknown";
}

double norm(Point p) { return std::hypot(p.x, p.y); }

Point rotate(Point p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

double reduce_mod_pi(double radians) {
  double t = std::fmod(radians, kPi);
  if (t < 0.0) t += kPi;
  if (t >= kPi) t -= kPi;
  return t;
}

Angle::Angle(double radians) : theta_(reduce_mod_pi(radians)) {}

Point Angle::direction() const { return {std::cos(theta_), std::sin(theta_)}; }
Point Angle::normal() const { return {-std::sin(theta_), std::cos(theta_)}; }

double gap(const Interval& a, const Interval& b) {
  return std::max({0.0, b.lo - a.hi, a.lo - b.hi});
}

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : intervals) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    } else {
      parts_.push_back(iv);
    }
  }
}

double IntervalUnion::length() const {
  double total = 0.0;
  for (const Interval& iv : parts_) total += iv.length();
  return total;
}

double union_length(std::span<const Interval> intervals) {
  return IntervalUnion(std::vector<Interval>(intervals.begin(), intervals.end())).length();
}

namespace {

// Collinearity test relative to the edge lengths, so tiny pieces behave like large ones.
bool left_turn(Point o, Point a, Point b) {
  const Point u = a - o;
  const Point v = b - o;
  return cross(u, v) > 1e-12 * norm(u) * norm(v);
}

}  // namespace

ConvexPolygon ConvexPolygon::hull(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(),
            [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  ConvexPolygon out;
  if (pts.size() <= 2) {
    out.vertices_ = std::move(pts);
    return out;
  }
  std::vector<Point> chain(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && !left_turn(chain[k - 2], chain[k - 1], p)) --k;
    chain[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && !left_turn(chain[k - 2], chain[k - 1], pts[i])) --k;
    chain[k++] = pts[i];
  }
  chain.resize(k - 1);
  out.vertices_ = std::move(chain);
  return out;
}

ConvexPolygon hull_of_points(std::span<const Point> points) { return ConvexPolygon::hull(points); }

ConvexPolygon ConvexPolygon::from_ccw(std::vector<Point> ccw) {
  if (ccw.empty()) fail(ErrorKind::Input, "polygon has no vertices");
  const std::size_t n = ccw.size();
  if (n >= 3) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!left_turn(ccw[i], ccw[(i + 1) % n], ccw[(i + 2) % n])) {
        fail(ErrorKind::Input, "polygon vertices are not strictly convex and counter-clockwise");
      }
    }
  }
  ConvexPolygon out;
  out.vertices_ = std::move(ccw);
  return out;
}

ConvexPolygon ConvexPolygon::square(Point lower_left, double side) {
  return rectangle(lower_left, side, side);
}

ConvexPolygon ConvexPolygon::rectangle(Point lower_left, double width, double height) {
  const Point p = lower_left;
  const Point pts[4] = {p, {p.x + width, p.y}, {p.x + width, p.y + height}, {p.x, p.y + height}};
  return hull(pts);
}

double ConvexPolygon::area() const {
  if (vertices_.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    twice += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }
  return 0.5 * twice;
}

double ConvexPolygon::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      best = std::max(best, norm(vertices_[i] - vertices_[j]));
    }
  }
  return best;
}

Point ConvexPolygon::centroid() const {
  Point sum;
  for (const Point& p : vertices_) sum = sum + p;
  return (1.0 / static_cast<double>(std::max<std::size_t>(1, vertices_.size()))) * sum;
}

bool ConvexPolygon::contains(Point p, double tol) const {
  const std::size_t n = vertices_.size();
  if (n == 0) return false;
  if (n == 1) return norm(p - vertices_[0]) <= tol;
  if (n == 2) {
    const Point a = vertices_[0];
    const Point d = vertices_[1] - a;
    const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
    return norm(p - (a + t * d)) <= tol;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point e = vertices_[(i + 1) % n] - vertices_[i];
    if (cross(e, p - vertices_[i]) < -tol * norm(e)) return false;
  }
  return true;
}

bool ConvexPolygon::contains(const ConvexPolygon& other, double tol) const {
  return std::all_of(other.vertices_.begin(), other.vertices_.end(),
                     [&](Point p) { return contains(p, tol); });
}

Interval project(const ConvexPolygon& polygon, Angle theta) {
  const Point u = theta.direction();
  const auto verts = polygon.vertices();
  if (verts.empty()) return {};
  double lo = dot(verts[0], u);
  double hi = lo;
  for (const Point& p : verts.subspan(1)) {
    const double t = dot(p, u);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return {lo, hi};
}

Width min_width(const ConvexPolygon& polygon) {
  const auto v = polygon.vertices();
  Width out;
  if (v.size() < 3) {
    out.degenerate = true;
    if (v.size() == 2) {
      const Point d = v[1] - v[0];
      out.direction = Angle(std::atan2(d.y, d.x) + 0.5 * kPi);
    }
    return out;
  }
  out.width = std::numeric_limits<double>::infinity();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point e = v[(i + 1) % n] - v[i];
    const double len = norm(e);
    double w = 0.0;
    for (const Point& p : v) w = std::max(w, cross(e, p - v[i]) / len);
    if (w < out.width) {
      out.width = w;
      out.direction = Angle(std::atan2(e.x, -e.y));
    }
  }
  return out;
}

ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty() || b.empty()) return {};
  if (b.degenerate()) {
    std::vector<Point> kept;
    for (const Point& p : b.vertices()) {
      if (a.contains(p, 0.0)) kept.push_back(p);
    }
    return ConvexPolygon::hull(kept);
  }
  std::vector<Point> poly(a.vertices().begin(), a.vertices().end());
  const auto clip = b.vertices();
  for (std::size_t i = 0; i < clip.size() && !poly.empty(); ++i) {
    const Point p0 = clip[i];
    const Point e = clip[(i + 1) % clip.size()] - p0;
    auto side = [&](Point q) { return cross(e, q - p0); };
    std::vector<Point> next;
    for (std::size_t j = 0; j < poly.size(); ++j) {
      const Point cur = poly[j];
      const Point nxt = poly[(j + 1) % poly.size()];
      const double sc = side(cur);
      const double sn = side(nxt);
      if (sc >= 0.0) next.push_back(cur);
      if ((sc >= 0.0) != (sn >= 0.0)) {
        const double t = sc / (sc - sn);
        next.push_back(cur + t * (nxt - cur));
      }
    }
    poly = std::move(next);
  }
  return ConvexPolygon::hull(poly);
}

double intersection_area(const ConvexPolygon& a, const ConvexPolygon& b) {
  return intersect(a, b).area();
}

std::vector<std::size_t> vitali_select(std::span<const Interval> intervals, double eps,
                                       double delta) {
  if (!(eps >= 0.0) || !(delta >= 0.0)) {
    fail(ErrorKind::Precondition, "vitali_select needs eps >= 0 and delta >= 0");
  }
  for (const Interval& iv : intervals) {
    if (iv.length() < delta - kGeomTol) {
      fail(ErrorKind::Precondition, "interval of length " + std::to_string(iv.length()) +
                                        " is shorter than delta = " + std::to_string(delta));
    }
  }
  std::vector<std::size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double la = intervals[a].length();
    const double lb = intervals[b].length();
    if (la != lb) return la > lb;
    return intervals[a].lo < intervals[b].lo;
  });

  // Alive intervals keyed by left endpoint. Every alive interval is no longer
  // than the one being kept, so only a bounded window of keys can be rejected.
  std::set<std::pair<double, std::size_t>> alive;
  for (std::size_t i = 0; i < intervals.size(); ++i) alive.emplace(intervals[i].lo, i);

  const double reach = eps + kGeomTol;
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    auto self = alive.find({intervals[idx].lo, idx});
    if (self == alive.end()) continue;
    const Interval chosen = intervals[idx];
    kept.push_back(idx);
    auto it = alive.lower_bound({chosen.lo - reach - chosen.length(), 0});
    while (it != alive.end() && it->first <= chosen.hi + reach) {
      if (gap(intervals[it->second], chosen) <= reach) {
        it = alive.erase(it);
      } else {
        ++it;
      }
    }
  }
  return kept;
}

std::vector<Interval> vitali_extract(std::span<const Interval> intervals, double eps,
                                     double delta) {
  std::vector<Interval> out;
  for (std::size_t i : vitali_select(intervals, eps, delta)) out.push_back(intervals[i]);
  return out;
}

}  // namespace lipgraph
