#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipgraph/geometry.hpp"

namespace lipgraph {

/// Rotation by num/den * pi, normalised to [0, 2) * pi with den > 0.
struct RationalAngle {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static RationalAngle make(std::int64_t num, std::int64_t den);
  double radians() const;
  friend bool operator==(const RationalAngle&, const RationalAngle&) = default;
};

RationalAngle operator+(RationalAngle a, RationalAngle b);

/// x -> scale * R(rotation) x + shift.
struct SimilarityMap {
  double scale = 1.0;
  double rotation = 0.0;
  Point shift;
  /// Set when the rotation is known to be a rational multiple of pi.
  std::optional<RationalAngle> rotation_pi;

  static SimilarityMap make(double scale, double rotation, Point shift);
  static SimilarityMap make(double scale, RationalAngle rotation, Point shift);
  static SimilarityMap identity();

  Point apply(Point p) const;
  ConvexPolygon apply(const ConvexPolygon& polygon) const;
};

/// outer o inner.
SimilarityMap compose(const SimilarityMap& outer, const SimilarityMap& inner);
Point fixed_point(const SimilarityMap& map);

/// Letters are 0-based map indices.
using Word = std::vector<std::uint16_t>;

/// 1-based rendering, e.g. "(3,1,2)".
std::string format_word(const Word& word);

/// Solves sum r_i^s = 1.
double similarity_dimension(std::span<const double> scales);

class Ifs {
 public:
  /// Maps are stably ordered by increasing scale.
  explicit Ifs(std::vector<SimilarityMap> maps, bool osc = false);

  static Ifs cantor4();
  /// k >= 4 squares of side 1/k: the four corners plus k - 4 along the bottom row.
  static Ifs cantor_k(int k);

  std::span<const SimilarityMap> maps() const { return maps_; }
  const SimilarityMap& operator[](std::size_t i) const { return maps_[i]; }
  std::size_t size() const { return maps_.size(); }
  bool osc() const { return osc_; }
  std::vector<double> scales() const;
  double similarity_dimension() const;
  double max_scale() const { return maps_.back().scale; }
  bool rotation_free() const;

 private:
  std::vector<SimilarityMap> maps_;
  bool osc_ = false;
};

SimilarityMap compose(const Ifs& ifs, std::span<const std::uint16_t> word);

struct AttractorHull {
  ConvexPolygon hull;
  /// Hausdorff distance from `hull` to the true attractor hull is at most this.
  double error_bound = 0.0;
};

/// Hull of the images of the fixed points under all words of length `depth`.
AttractorHull attractor_hull(const Ifs& ifs, int depth = 6);

/// A polygon P with f_j(P) inside P for every map, obtained by iterating
/// hull(union f_j(P)) from a large regular polygon.
ConvexPolygon invariant_hull(const Ifs& ifs, int iterations = 40);

inline constexpr std::size_t kDefaultPieceCap = 10'000'000;

struct Piece {
  Word word;
  SimilarityMap map;
  ConvexPolygon polygon;
};

struct Generation {
  int level = 0;
  ConvexPolygon seed;
  std::vector<Piece> pieces;

  std::vector<ConvexPolygon> polygons() const;
};

/// Pieces f_w(seed) for |w| = n in lexicographic order.
Generation generation(const Ifs& ifs, const ConvexPolygon& seed, int n,
                      std::size_t max_pieces = kDefaultPieceCap);

struct OverlapReport {
  int overlap_index = 0;
  std::size_t overlapping_pairs = 0;
  /// Every piece lies in the seed.
  bool nested = false;
};

/// Chromatic number of the positive-area overlap graph via greedy colouring in
/// lexicographic order.
OverlapReport overlap_index(const Generation& gen);

struct LineSlice {
  std::vector<std::size_t> indices;
  std::optional<Ifs> sub;
  double dimension = 0.0;
};

/// Maps g with g(L) inside L for L = {p : <p, normal(direction)> = offset}.
LineSlice line_invariant_subifs(const Ifs& ifs, Angle direction, double offset);

}  // namespace lipgraph
