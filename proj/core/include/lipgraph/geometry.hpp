#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace lipgraph {

/// Absolute tolerance used by every geometric predicate.
inline constexpr double kGeomTol = 1e-9;
inline constexpr double kPi = std::numbers::pi;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point p);
Point rotate(Point p, double angle);

/// A line direction; stored reduced to [0, pi).
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians);

  double radians() const { return theta_; }
  /// Unit vector (cos, sin).
  Point direction() const;
  /// Unit vector (-sin, cos).
  Point normal() const;

 private:
  double theta_ = 0.0;
};

/// Reduce an angle to [0, pi).
double reduce_mod_pi(double radians);

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
  Interval inflated(double d) const { return {lo - d, hi + d}; }
};

/// Distance between closed intervals (0 when they meet).
double gap(const Interval& a, const Interval& b);

/// Disjoint union of closed intervals, sorted, with touching parts merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> intervals);

  std::span<const Interval> parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  double length() const;

 private:
  std::vector<Interval> parts_;
};

double union_length(std::span<const Interval> intervals);

/// Convex polygon with counter-clockwise vertices. One or two vertices
/// represent a point or a segment.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  /// Builds the convex hull of the given points.
  static ConvexPolygon hull(std::span<const Point> points);
  /// Validates that `ccw` is already a strictly convex CCW chain.
  static ConvexPolygon from_ccw(std::vector<Point> ccw);
  static ConvexPolygon square(Point lower_left, double side);
  static ConvexPolygon rectangle(Point lower_left, double width, double height);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  bool degenerate() const { return vertices_.size() < 3; }

  double area() const;
  double diameter() const;
  Point centroid() const;
  bool contains(Point p, double tol = kGeomTol) const;
  bool contains(const ConvexPolygon& other, double tol = kGeomTol) const;

  template <class F>
  ConvexPolygon mapped(F&& f) const {
    ConvexPolygon out;
    out.vertices_.reserve(vertices_.size());
    for (const Point& p : vertices_) out.vertices_.push_back(f(p));
    return out;
  }

 private:
  std::vector<Point> vertices_;
};

ConvexPolygon hull_of_points(std::span<const Point> points);

/// Orthogonal projection onto the line through the origin with direction theta.
Interval project(const ConvexPolygon& polygon, Angle theta);

struct Width {
  double width = 0.0;
  /// Projection direction realising the width.
  Angle direction;
  bool degenerate = false;
};

Width min_width(const ConvexPolygon& polygon);

/// Convex intersection; may have fewer than three vertices or be empty.
ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b);
double intersection_area(const ConvexPolygon& a, const ConvexPolygon& b);

/// Greedy separated selection: longest first (ties by smaller left end),
/// discarding every interval within distance eps of a kept one. Returns the
/// kept indices in selection order.
std::vector<std::size_t> vitali_select(std::span<const Interval> intervals, double eps,
                                       double delta);
std::vector<Interval> vitali_extract(std::span<const Interval> intervals, double eps,
                                     double delta);

}  // namespace lipgraph
