#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "lipgraph/dimension.hpp"
#include "lipgraph/favard.hpp"
#include "lipgraph/geometry.hpp"
#include "lipgraph/ifs.hpp"

namespace lipgraph {

/// Words grouped by total rotation (mod 2 pi).
std::map<std::pair<std::int64_t, std::int64_t>, std::vector<Word>> partition_by_rotation(
    const Ifs& ifs, std::span<const Word> words);

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  bool within = false;
};

/// Sub-family with one scale r and one rotation A.
struct Uifs {
  Ifs maps;
  std::vector<Word> words{};  // parent words, lexicographic
  int kappa = 0;
  std::size_t family_size = 0;  // words available before trimming
  double scale = 0.0;
  RationalAngle rotation{};
  double gamma = 0.0;
  bool already_uniform = false;
  Bracket r_bracket{};    // c1 (c2 eta)^(c3/eta) <= r <= (1.5 c2 eta)^(c3 / 3 eta)
  Bracket kappa_window{};  // g^-1(M / 2T eta) <= kappa <= g^-1(3M / 4T eta), g(x) = x / log x
};

/// Trims a class of equal-scale, equal-rotation words so that the
/// dimension lands in [1 - eta, 1 - eta / 2].
Uifs uniformize(const Ifs& ifs, double eta, int kappa_max = 64);

/// Finite union of arcs in [0, pi).
class AngleSet {
 public:
  AngleSet() = default;
  explicit AngleSet(std::vector<Interval> arcs);
  static AngleSet from_grid(const AngleGrid& grid, const std::vector<bool>& cells);

  bool contains(double theta) const;
  double measure() const;
  std::span<const Interval> arcs() const { return arcs_.parts(); }

 private:
  IntervalUnion arcs_;
};

/// Indices of a maximal family whose intervals are pairwise more than `gap`
/// apart, scanning by right endpoint.
std::vector<std::size_t> greedy_separated(std::span<const Interval> intervals, double gap);

/// Constants of the parent system feeding the projection threshold.
struct RegularityConstants {
  double a = 1.0;      // lower Ahlfors
  double b = 1.0;      // upper Ahlfors
  double omega = 1.0;  // overlap index
  double c_e = 1.0;
};

struct GoodAngles {
  AngleSet set;
  std::vector<std::size_t> counts;  // per grid angle
  double threshold = 0.0;           // eps delta0 r^(-n gamma)
  double delta0 = 0.0;
  double measure_lower_bound = 0.0; // of the gamma-dimensional measure of C
  int overlap = 1;
};

GoodAngles good_angle_set(const Uifs& uifs, const ConvexPolygon& hull, int n, double eps,
                          const AngleGrid& grid, const RegularityConstants& constants = {});

/// D(n; theta) for n = 1..n_max along theta -> theta + phi (mod pi).
std::vector<double> rotation_density(double theta, double phi, const AngleSet& set, int n_max);

struct PersistentAngle {
  double theta = 0.0;
  double min_density = 0.0;
  std::vector<double> density;  // n = 1..n_max
};

/// Grid angle whose orbit under the frame rotation visits the good sets most
/// persistently. The last set is reused for deeper levels. Ties go to the
/// largest minimum of `counts` (per grid angle) along the orbit, then to the
/// smaller angle.
PersistentAngle find_persistent_angle(const Uifs& uifs, std::span<const AngleSet> sets, double eps,
                                      int n_max, const AngleGrid& grid,
                                      std::span<const std::size_t> counts = {});

struct PlanLevel {
  int n = 0;
  double frame_angle = 0.0;           // direction used for the children
  std::vector<std::uint16_t> chosen;  // child indices
  double min_gap = 0.0;               // at unit scale; level n gaps are r^(n-1) times this
  bool good = false;                  // count >= r^-(1 - eps / 2)
};

struct NestedPlan {
  double theta = 0.0;
  double scale = 0.0;
  std::vector<PlanLevel> levels;
  std::vector<double> log_components;  // log M_n
};

NestedPlan build_nested_plan(const Uifs& uifs, const ConvexPolygon& hull, double theta, double eps,
                             int depth);

/// E_n: images of the hull under chosen words of length n.
std::vector<ConvexPolygon> plan_pieces(const Uifs& uifs, const ConvexPolygon& hull,
                                       const NestedPlan& plan, int n,
                                       std::size_t max_pieces = kDefaultPieceCap);

/// Smallest gap between sibling projections at level n divided by r^n.
double plan_separation(const Uifs& uifs, const ConvexPolygon& hull, const NestedPlan& plan, int n,
                       std::size_t max_pieces = kDefaultPieceCap);

struct RotationalCertificate {
  HataBound hata;
  bool dimension_pass = false;
  double dimension_margin = 0.0;   // hata - (1 - eps)
  double realized_lipschitz = 0.0; // diam(K) / r
  double formula_lipschitz = 0.0;  // diam(K) / prod r_k * max{1/nu, 1} * exp(20 M eps^-1 log eps^-1)
  bool lipschitz_pass = false;
  std::size_t good_levels = 0;
};

RotationalCertificate certify_rotational(const NestedPlan& plan, double eps, const ConvexPolygon& hull,
                                         const Ifs& parent);

}  // namespace lipgraph
