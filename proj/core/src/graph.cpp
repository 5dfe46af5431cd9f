#include "lipgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lipgraph/error.hpp"

namespace lipgraph {

Point Frame::x_axis() const { return {std::cos(theta_), std::sin(theta_)}; }
Point Frame::y_axis() const { return {-std::sin(theta_), std::cos(theta_)}; }

Point Frame::to_frame(Point world) const { return {dot(world, x_axis()), dot(world, y_axis())}; }

Point Frame::to_world(Point framed) const {
  return framed.x * x_axis() + framed.y * y_axis();
}

PLGraph::PLGraph(Frame frame, std::vector<double> xs, std::vector<double> ys)
    : frame_(frame), xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size() || xs_.empty()) fail(ErrorKind::Graph, "malformed graph");
}

double PLGraph::operator()(double x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - xs_.begin());
  const double x0 = xs_[j - 1];
  const double x1 = xs_[j];
  if (x1 == x0) return ys_[j];
  const double t = (x - x0) / (x1 - x0);
  return ys_[j - 1] + t * (ys_[j] - ys_[j - 1]);
}

double PLGraph::lipschitz() const {
  double best = 0.0;
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    const double dx = xs_[i] - xs_[i - 1];
    if (dx > 0.0) best = std::max(best, std::abs(ys_[i] - ys_[i - 1]) / dx);
  }
  return best;
}

std::vector<Point> PLGraph::world_polyline() const {
  std::vector<Point> out;
  out.reserve(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) out.push_back(frame_.to_world({xs_[i], ys_[i]}));
  return out;
}

double PLGraph::distance(Point p) const {
  auto seg_dist = [&](std::size_t i) {
    const Point a{xs_[i], ys_[i]};
    const Point b{xs_[i + 1], ys_[i + 1]};
    const Point d = b - a;
    const double len2 = dot(d, d);
    const double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
    return norm(p - (a + t * d));
  };
  double best = std::abs(p.y - (*this)(p.x));
  if (xs_.size() == 1) return norm(p - Point{xs_[0], ys_[0]});
  // Only segments whose x-range meets [x - best, x + best] can be closer.
  auto lo = std::lower_bound(xs_.begin(), xs_.end(), p.x - best);
  std::size_t i = lo == xs_.begin() ? 0 : static_cast<std::size_t>(lo - xs_.begin()) - 1;
  for (; i + 1 < xs_.size() && xs_[i] <= p.x + best; ++i) best = std::min(best, seg_dist(i));
  return best;
}

Interval frame_domain(std::span<const ConvexPolygon> pieces, const Frame& frame) {
  const Angle dir(frame.theta());
  Interval out{1e300, -1e300};
  for (const ConvexPolygon& p : pieces) {
    const Interval iv = project(p, dir);
    out.lo = std::min(out.lo, iv.lo);
    out.hi = std::max(out.hi, iv.hi);
  }
  return out;
}

namespace {

struct Support {
  double x0, x1;  // frame-x extent
  double y0, y1;  // frame-y extent
  Point left, right;
};

Support support(const ConvexPolygon& poly, const Frame& frame) {
  std::vector<Point> pts;
  pts.reserve(poly.size());
  for (const Point& v : poly.vertices()) pts.push_back(frame.to_frame(v));
  Support s{1e300, -1e300, 1e300, -1e300, {}, {}};
  for (const Point& q : pts) {
    s.x0 = std::min(s.x0, q.x);
    s.x1 = std::max(s.x1, q.x);
    s.y0 = std::min(s.y0, q.y);
    s.y1 = std::max(s.y1, q.y);
  }
  // Midpoint of the supporting edge when a side is perpendicular to the x axis.
  auto mid_at = [&](double x) {
    const double tol = kGeomTol * std::max(1.0, std::abs(x));
    double lo = 1e300;
    double hi = -1e300;
    for (const Point& q : pts) {
      if (std::abs(q.x - x) <= tol) {
        lo = std::min(lo, q.y);
        hi = std::max(hi, q.y);
      }
    }
    return Point{x, 0.5 * (lo + hi)};
  };
  s.left = mid_at(s.x0);
  s.right = mid_at(s.x1);
  return s;
}

std::vector<Support> sorted_supports(std::span<const ConvexPolygon> pieces, const Frame& frame) {
  std::vector<Support> out;
  out.reserve(pieces.size());
  for (const ConvexPolygon& p : pieces) out.push_back(support(p, frame));
  std::sort(out.begin(), out.end(), [](const Support& a, const Support& b) { return a.x0 < b.x0; });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].x0 < out[i - 1].x1 - kGeomTol) {
      fail(ErrorKind::Graph, "pieces overlap in the frame x direction near x = " +
                                 std::to_string(out[i].x0));
    }
  }
  return out;
}

}  // namespace

PLGraph build_level(std::span<const ConvexPolygon> pieces, const Frame& frame, Interval domain) {
  if (pieces.empty()) fail(ErrorKind::Graph, "cannot build a graph through zero pieces");
  const std::vector<Support> sup = sorted_supports(pieces, frame);
  if (sup.front().x0 < domain.lo - kGeomTol || sup.back().x1 > domain.hi + kGeomTol) {
    fail(ErrorKind::Graph, "pieces extend past the graph domain");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  auto push = [&](Point p) {
    if (!xs.empty() && std::abs(p.x - xs.back()) <= kGeomTol) {
      if (std::abs(p.y - ys.back()) > kGeomTol) {
        fail(ErrorKind::Graph, "abutting pieces disagree at x = " + std::to_string(p.x));
      }
      return;
    }
    xs.push_back(p.x);
    ys.push_back(p.y);
  };
  push({domain.lo, sup.front().left.y});
  for (const Support& s : sup) {
    push(s.left);
    push(s.right);
  }
  push({domain.hi, sup.back().right.y});
  return PLGraph(frame, std::move(xs), std::move(ys));
}

double sup_difference(const PLGraph& a, const PLGraph& b) {
  double best = 0.0;
  for (double x : a.xs()) best = std::max(best, std::abs(a(x) - b(x)));
  for (double x : b.xs()) best = std::max(best, std::abs(a(x) - b(x)));
  return best;
}

namespace {

void check_nested(const Level& parents, const Level& children, const Frame& frame, int n) {
  struct Entry {
    double x0, x1;
    std::size_t idx;
  };
  const Angle dir(frame.theta());
  std::vector<Entry> ps;
  ps.reserve(parents.size());
  for (std::size_t i = 0; i < parents.size(); ++i) {
    const Interval iv = project(parents[i], dir);
    ps.push_back({iv.lo, iv.hi, i});
  }
  std::sort(ps.begin(), ps.end(), [](const Entry& a, const Entry& b) { return a.x0 < b.x0; });
  for (const ConvexPolygon& child : children) {
    const Interval iv = project(child, dir);
    auto it = std::upper_bound(ps.begin(), ps.end(), iv.lo + kGeomTol,
                               [](double x, const Entry& e) { return x < e.x0; });
    bool found = false;
    while (it != ps.begin()) {
      --it;
      if (it->x1 < iv.lo - kGeomTol) break;
      if (parents[it->idx].contains(child)) {
        found = true;
        break;
      }
    }
    if (!found) {
      fail(ErrorKind::Hypothesis, "a piece of level " + std::to_string(n + 1) +
                                      " has no parent in level " + std::to_string(n));
    }
  }
}

}  // namespace

GraphHypotheses verify_hypotheses(std::span<const Level> levels, const Frame& frame,
                                  std::optional<double> sigma_hint) {
  if (levels.empty()) fail(ErrorKind::Hypothesis, "no levels supplied");
  GraphHypotheses hyp;
  const Interval domain = frame_domain(levels.front(), frame);

  std::vector<PLGraph> graphs;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (n > 0) check_nested(levels[n - 1], levels[n], frame, static_cast<int>(n));
    const std::vector<Support> sup = sorted_supports(levels[n], frame);
    double diam = 0.0;
    for (const ConvexPolygon& p : levels[n]) diam = std::max(diam, p.diameter());
    hyp.max_diameters.push_back(diam);
    for (std::size_t i = 0; i < sup.size(); ++i) {
      const double w = sup[i].x1 - sup[i].x0;
      const double h = sup[i].y1 - sup[i].y0;
      if (w > 0.0) {
        hyp.piece_ratio = std::max(hyp.piece_ratio, h / w);
      } else if (h > kGeomTol) {
        fail(ErrorKind::Hypothesis, "a piece is a segment perpendicular to the frame axis");
      }
      if (i + 1 < sup.size()) {
        const double dx = sup[i + 1].left.x - sup[i].right.x;
        const double dy = std::abs(sup[i + 1].left.y - sup[i].right.y);
        if (dx > kGeomTol) {
          hyp.connector_slope = std::max(hyp.connector_slope, dy / dx);
        } else if (dy > kGeomTol) {
          fail(ErrorKind::Hypothesis, "consecutive pieces touch at different heights");
        }
      }
    }
    graphs.push_back(build_level(levels[n], frame, domain));
  }
  hyp.lambda = std::max(hyp.piece_ratio, hyp.connector_slope);

  for (std::size_t n = 0; n + 1 < graphs.size(); ++n) {
    hyp.sup_differences.push_back(sup_difference(graphs[n], graphs[n + 1]));
  }

  double sigma = 0.0;
  if (sigma_hint) {
    sigma = *sigma_hint;
  } else {
    const auto& d = hyp.sup_differences;
    for (std::size_t n = 0; n + 1 < d.size(); ++n) {
      if (d[n] > 0.0) sigma = std::max(sigma, d[n + 1] / d[n]);
    }
    const auto& diam = hyp.max_diameters;
    for (std::size_t n = 0; n + 1 < diam.size(); ++n) {
      if (diam[n] > 0.0) sigma = std::max(sigma, diam[n + 1] / diam[n]);
    }
  }
  if (!(sigma < 1.0)) {
    fail(ErrorKind::Hypothesis, "fitted contraction ratio " + std::to_string(sigma) + " is not below 1");
  }
  if (sigma <= 0.0) sigma = 0.5;  // single level: any ratio works, c absorbs it
  hyp.sigma = sigma;

  // Levels are numbered from 1.
  double c = 0.0;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const double scale = std::pow(sigma, static_cast<double>(n + 1));
    double bound = hyp.max_diameters[n];
    if (n < hyp.sup_differences.size()) bound = std::max(bound, hyp.sup_differences[n]);
    c = std::max(c, bound / scale);
  }
  hyp.c = c;
  return hyp;
}

GraphBuild build_graph(std::span<const Level> levels, const Frame& frame,
                       const GraphHypotheses& hyp) {
  if (levels.empty()) fail(ErrorKind::Graph, "no levels supplied");
  GraphBuild out;
  const Interval domain = frame_domain(levels.front(), frame);
  for (std::size_t n = 0; n < levels.size(); ++n) {
    out.graphs.push_back(build_level(levels[n], frame, domain));
    out.measured_lipschitz = std::max(out.measured_lipschitz, out.graphs.back().lipschitz());
    out.cauchy_bounds.push_back(hyp.c * std::pow(hyp.sigma, static_cast<double>(n + 1)));
  }
  for (std::size_t n = 0; n + 1 < out.graphs.size(); ++n) {
    out.sup_differences.push_back(sup_difference(out.graphs[n], out.graphs[n + 1]));
  }
  out.tail_bound = out.cauchy_bounds.back() / (1.0 - hyp.sigma);
  return out;
}

Containment containment_check(std::span<const ConvexPolygon> pieces, const PLGraph& graph,
                              double radius) {
  Containment out;
  out.radius = radius;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (const Point& v : pieces[i].vertices()) {
      const double d = graph.distance(graph.frame().to_frame(v));
      if (d > out.max_distance) {
        out.max_distance = d;
        out.witness_piece = i;
        out.witness_vertex = v;
      }
    }
  }
  out.pass = out.max_distance <= radius + kGeomTol;
  return out;
}

}  // namespace lipgraph
