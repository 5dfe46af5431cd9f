#include "lipgraph/rotational.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lipgraph/error.hpp"
#include "lipgraph/parallel.hpp"

namespace lipgraph {

namespace {

constexpr std::size_t kMaxUniformMaps = 200'000;

// x / log x = y for x > e.
double inverse_g(double y) {
  if (y <= std::exp(1.0)) return std::exp(1.0);
  double lo = std::exp(1.0);
  double hi = 2.0 * y * std::log(y) + 3.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid / std::log(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RationalAngle word_rotation(const Ifs& ifs, const Word& w) {
  RationalAngle total{};
  for (std::uint16_t j : w) total = total + *ifs[j].rotation_pi;
  return total;
}

std::vector<Word> first_words_of_length(std::size_t letters, int length, std::size_t count) {
  std::vector<Word> out;
  Word w(static_cast<std::size_t>(length), 0);
  while (out.size() < count) {
    out.push_back(w);
    int i = length - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] + 1u == letters) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<Word> first_arrangements(const std::vector<int>& counts, std::size_t count) {
  Word w;
  for (std::size_t k = 0; k < counts.size(); ++k) w.insert(w.end(), static_cast<std::size_t>(counts[k]), static_cast<std::uint16_t>(k));
  std::vector<Word> out;
  do {
    out.push_back(w);
  } while (out.size() < count && std::next_permutation(w.begin(), w.end()));
  return out;
}

}  // namespace

std::map<std::pair<std::int64_t, std::int64_t>, std::vector<Word>> partition_by_rotation(
    const Ifs& ifs, std::span<const Word> words) {
  for (const SimilarityMap& m : ifs.maps()) {
    if (!m.rotation_pi) fail(ErrorKind::Unsupported, "rotation is not a declared rational multiple of pi");
  }
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<Word>> classes;
  for (const Word& w : words) {
    const RationalAngle a = word_rotation(ifs, w);
    classes[{a.num, a.den}].push_back(w);
  }
  return classes;
}

Uifs uniformize(const Ifs& ifs, double eta, int kappa_max) {
  if (!(eta > 0.0 && eta < 1.0)) fail(ErrorKind::Input, "eta must lie in (0, 1)");
  const double dim = ifs.similarity_dimension();
  if (std::abs(dim - 1.0) > 1e-9) {
    fail(ErrorKind::Precondition, "uniformization needs similarity dimension 1, got " + std::to_string(dim));
  }
  for (const SimilarityMap& m : ifs.maps()) {
    if (!m.rotation_pi) fail(ErrorKind::Unsupported, "rotation is not a declared rational multiple of pi");
  }
  const std::size_t big_m = ifs.size();
  const std::vector<double> r = ifs.scales();
  const bool uniform = std::all_of(ifs.maps().begin(), ifs.maps().end(), [&](const SimilarityMap& m) {
    return std::abs(m.scale - r[0]) <= 1e-12 * r[0] && *m.rotation_pi == *ifs[0].rotation_pi;
  });

  for (int kappa = 1; kappa <= kappa_max; ++kappa) {
    double log_inv_r = 0.0;
    double log_family = 0.0;
    std::vector<int> counts;
    if (uniform) {
      log_inv_r = kappa * std::log(1.0 / r[0]);
      log_family = kappa * std::log(static_cast<double>(big_m));
    } else {
      int length = 0;
      for (double rk : r) {
        counts.push_back(static_cast<int>(std::ceil(kappa * std::pow(rk, dim) - 1e-9)));
        length += counts.back();
        log_inv_r += counts.back() * std::log(1.0 / rk);
      }
      log_family = std::lgamma(length + 1.0);
      for (int c : counts) log_family -= std::lgamma(c + 1.0);
    }
    const double family = std::exp(log_family);
    const double hi = std::min(family, std::floor(std::exp((1.0 - 0.5 * eta) * log_inv_r) * (1.0 + 1e-12)));
    const double lo = std::ceil(std::exp((1.0 - eta) * log_inv_r) * (1.0 - 1e-12));
    if (hi < 2.0 || hi < lo) continue;
    if (hi > static_cast<double>(kMaxUniformMaps)) {
      fail(ErrorKind::Resource, "uniform sub-family would need " + std::to_string(hi) + " maps");
    }
    const std::size_t n = static_cast<std::size_t>(std::llround(hi));
    std::vector<Word> words = uniform ? first_words_of_length(big_m, kappa, n) : first_arrangements(counts, n);
    auto classes = partition_by_rotation(ifs, words);
    auto largest = std::max_element(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
      return a.second.size() < b.second.size();
    });
    words = std::move(largest->second);

    std::vector<SimilarityMap> maps;
    maps.reserve(words.size());
    for (const Word& w : words) maps.push_back(compose(ifs, w));
    const double scale = maps.front().scale;
    const RationalAngle rotation = *maps.front().rotation_pi;
    Uifs u{.maps = Ifs(std::move(maps), ifs.osc())};
    u.words = std::move(words);
    u.kappa = kappa;
    u.family_size = static_cast<std::size_t>(std::min(family, 1e18));
    u.scale = scale;
    u.rotation = rotation;
    u.gamma = std::log(static_cast<double>(u.words.size())) / log_inv_r;
    u.already_uniform = uniform;

    double c1 = 1.0;
    double t = 0.0;
    for (double rk : r) {
      c1 *= rk;
      t += std::pow(rk, dim) * std::log(1.0 / rk);
    }
    const double c2 = 4.0 / (3.0 * big_m) * t;
    const double c3 = 1.5 * big_m;
    u.r_bracket.lower = c1 * std::pow(c2 * eta, c3 / eta);
    u.r_bracket.upper = std::pow(1.5 * c2 * eta, c3 / (3.0 * eta));
    u.r_bracket.within = u.r_bracket.lower <= scale && scale <= u.r_bracket.upper;
    u.kappa_window.lower = inverse_g(big_m / (2.0 * t * eta));
    u.kappa_window.upper = inverse_g(3.0 * big_m / (4.0 * t * eta));
    u.kappa_window.within = u.kappa_window.lower <= kappa && kappa <= u.kappa_window.upper;
    return u;
  }
  fail(ErrorKind::Uniformization, "no kappa <= " + std::to_string(kappa_max) +
                                      " gives dimension in [1 - eta, 1 - eta / 2]");
}

AngleSet::AngleSet(std::vector<Interval> arcs) {
  for (Interval& a : arcs) {
    a.lo = std::max(0.0, a.lo);
    a.hi = std::min(kPi, a.hi);
  }
  std::erase_if(arcs, [](const Interval& a) { return a.hi < a.lo; });
  arcs_ = IntervalUnion(std::move(arcs));
}

AngleSet AngleSet::from_grid(const AngleGrid& grid, const std::vector<bool>& cells) {
  std::vector<Interval> arcs;
  for (int i = 0; i < grid.resolution(); ++i) {
    if (cells[static_cast<std::size_t>(i)]) arcs.push_back({i * grid.step(), (i + 1) * grid.step()});
  }
  return AngleSet(std::move(arcs));
}

bool AngleSet::contains(double theta) const {
  const double t = reduce_mod_pi(theta);
  const auto parts = arcs_.parts();
  auto it = std::upper_bound(parts.begin(), parts.end(), t,
                             [](double x, const Interval& a) { return x < a.lo; });
  if (it == parts.begin()) return false;
  --it;
  return t <= it->hi;
}

double AngleSet::measure() const { return arcs_.length(); }

std::vector<std::size_t> greedy_separated(std::span<const Interval> intervals, double gap) {
  std::vector<std::size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (intervals[a].hi != intervals[b].hi) return intervals[a].hi < intervals[b].hi;
    return a < b;
  });
  std::vector<std::size_t> kept;
  double last_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i : order) {
    if (intervals[i].lo - last_hi > gap) {
      kept.push_back(i);
      last_hi = intervals[i].hi;
    }
  }
  return kept;
}

GoodAngles good_angle_set(const Uifs& uifs, const ConvexPolygon& hull, int n, double eps,
                          const AngleGrid& grid, const RegularityConstants& k) {
  if (n < 1) fail(ErrorKind::Input, "good_angle_set needs n >= 1");
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorKind::Input, "epsilon must lie in (0, 1)");
  const Generation gen = generation(uifs.maps, hull, n);
  const std::vector<ConvexPolygon> polys = gen.polygons();
  const double r = uifs.scale;
  const double gamma = uifs.gamma;
  const double nu = min_width(hull).width;
  const double diam = hull.diameter();
  if (!(nu > 0.0)) fail(ErrorKind::Precondition, "the hull must have positive width");

  GoodAngles out;
  out.overlap = overlap_index(gen).overlap_index;
  out.measure_lower_bound = k.a * nu / (8.0 * k.omega * k.b * std::pow(diam, 1.0 - gamma)) * std::pow(r, 1.0 - gamma);
  const double b0 = 8.0 * k.omega * k.b * diam / (k.a * nu) * std::pow(r, gamma - 1.0);
  const double alpha0 = std::max({diam / 2.0, 4.0 / nu, 1.0});
  const double omega0 = out.overlap;
  out.delta0 = out.measure_lower_bound /
               (15.0 * k.c_e * std::pow(alpha0, 4) * (alpha0 + 1.0) * omega0 * omega0 * b0) *
               (1.0 - std::exp(-(1.0 - gamma))) / std::pow(2.0 + 4.0 * alpha0, gamma);
  out.threshold = eps * out.delta0 * std::pow(r, -n * gamma);

  const double sep = std::pow(r, n);
  out.counts.assign(static_cast<std::size_t>(grid.resolution()), 0);
  parallel_for(out.counts.size(), [&](std::size_t i) {
    const Angle dir(grid.angle(static_cast<int>(i)));
    std::vector<Interval> ivs;
    ivs.reserve(polys.size());
    for (const ConvexPolygon& p : polys) ivs.push_back(project(p, dir));
    out.counts[i] = greedy_separated(ivs, sep).size();
  });
  std::vector<bool> cells(out.counts.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<double>(out.counts[i]) >= out.threshold;
  out.set = AngleSet::from_grid(grid, cells);
  return out;
}

std::vector<double> rotation_density(double theta, double phi, const AngleSet& set, int n_max) {
  if (n_max < 1) fail(ErrorKind::Input, "n_max must be at least 1");
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double step = std::fmod(static_cast<long double>(phi), pi);
  long double x = std::fmod(static_cast<long double>(theta), pi);
  if (x < 0) x += pi;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  std::size_t hits = 0;
  for (int k = 0; k < n_max; ++k) {
    if (set.contains(static_cast<double>(x))) ++hits;
    out.push_back(static_cast<double>(hits) / (k + 1));
    x += step;
    x = std::fmod(x, pi);
    if (x < 0) x += pi;
  }
  return out;
}

PersistentAngle find_persistent_angle(const Uifs& uifs, std::span<const AngleSet> sets, double eps,
                                      int n_max, const AngleGrid& grid, std::span<const std::size_t> counts) {
  if (!counts.empty() && counts.size() != static_cast<std::size_t>(grid.resolution())) {
    fail(ErrorKind::Input, "tie-break counts must match the angle grid");
  }
  if (sets.empty()) fail(ErrorKind::Input, "no good-angle sets supplied");
  if (n_max < 1) fail(ErrorKind::Input, "n_max must be at least 1");
  const double step = -uifs.rotation.radians();
  const long double pi = 3.141592653589793238462643383279502884L;
  std::vector<std::vector<double>> density(static_cast<std::size_t>(grid.resolution()));
  std::vector<std::size_t> weakest(density.size(), 0);
  parallel_for(density.size(), [&](std::size_t i) {
    long double x = grid.angle(static_cast<int>(i));
    std::size_t hits = 0;
    auto& d = density[i];
    d.reserve(static_cast<std::size_t>(n_max));
    std::size_t low = std::numeric_limits<std::size_t>::max();
    for (int k = 0; k < n_max; ++k) {
      const AngleSet& set = sets[std::min<std::size_t>(static_cast<std::size_t>(k), sets.size() - 1)];
      if (!counts.empty()) {
        const auto cell = std::min<std::size_t>(static_cast<std::size_t>(x / grid.step()), counts.size() - 1);
        low = std::min(low, counts[cell]);
      }
      if (set.contains(static_cast<double>(x))) ++hits;
      d.push_back(static_cast<double>(hits) / (k + 1));
      x = std::fmod(x + step, pi);
      if (x < 0) x += pi;
    }
    weakest[i] = counts.empty() ? 0 : low;
  });
  PersistentAngle best;
  best.min_density = -1.0;
  std::size_t best_weakest = 0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double score = *std::min_element(density[i].begin(), density[i].end());
    if (score > best.min_density || (score == best.min_density && weakest[i] > best_weakest)) {
      best_weakest = weakest[i];
      best.min_density = score;
      best.theta = grid.angle(static_cast<int>(i));
      best.density = density[i];
    }
  }
  if (best.min_density < 1.0 - eps / 2.0) {
    fail(ErrorKind::PersistentAngle, "best angle " + std::to_string(best.theta) + " reaches density " +
                                         std::to_string(best.min_density) + " < 1 - eps/2");
  }
  return best;
}

NestedPlan build_nested_plan(const Uifs& uifs, const ConvexPolygon& hull, double theta, double eps,
                             int depth) {
  if (depth < 1) fail(ErrorKind::Input, "plan depth must be at least 1");
  const double r = uifs.scale;
  std::vector<ConvexPolygon> children;
  for (const SimilarityMap& m : uifs.maps.maps()) children.push_back(m.apply(hull));
  const double floor_count = std::pow(r, -(1.0 - eps / 2.0));

  NestedPlan plan;
  plan.theta = theta;
  plan.scale = r;
  double log_m = 0.0;
  for (int n = 1; n <= depth; ++n) {
    PlanLevel level;
    level.n = n;
    level.frame_angle = reduce_mod_pi(theta - (n - 1) * uifs.rotation.radians());
    const Angle dir(level.frame_angle);
    std::vector<Interval> ivs;
    for (const ConvexPolygon& c : children) ivs.push_back(project(c, dir));
    std::vector<std::size_t> kept = greedy_separated(ivs, r);
    std::sort(kept.begin(), kept.end());
    for (std::size_t j : kept) level.chosen.push_back(static_cast<std::uint16_t>(j));

    std::vector<Interval> chosen_ivs;
    for (std::size_t j : kept) chosen_ivs.push_back(ivs[j]);
    std::sort(chosen_ivs.begin(), chosen_ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    level.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < chosen_ivs.size(); ++i) {
      level.min_gap = std::min(level.min_gap, chosen_ivs[i].lo - chosen_ivs[i - 1].hi);
    }
    level.good = static_cast<double>(kept.size()) >= floor_count;
    log_m += std::log(static_cast<double>(kept.size()));
    plan.log_components.push_back(log_m);
    plan.levels.push_back(std::move(level));
  }
  return plan;
}

namespace {

std::vector<SimilarityMap> plan_maps(const Uifs& uifs, const NestedPlan& plan, int n, std::size_t max_pieces) {
  if (n < 0 || n > static_cast<int>(plan.levels.size())) fail(ErrorKind::Input, "plan level out of range");
  if (n > 0 && plan.log_components[static_cast<std::size_t>(n - 1)] > std::log(static_cast<double>(max_pieces))) {
    fail(ErrorKind::Resource, "plan level " + std::to_string(n) + " exceeds the piece cap");
  }
  std::vector<SimilarityMap> maps{SimilarityMap::identity()};
  for (int k = 0; k < n; ++k) {
    std::vector<SimilarityMap> next;
    for (const SimilarityMap& m : maps) {
      for (std::uint16_t j : plan.levels[static_cast<std::size_t>(k)].chosen) next.push_back(compose(m, uifs.maps[j]));
    }
    maps = std::move(next);
  }
  return maps;
}

}  // namespace

std::vector<ConvexPolygon> plan_pieces(const Uifs& uifs, const ConvexPolygon& hull, const NestedPlan& plan,
                                       int n, std::size_t max_pieces) {
  std::vector<ConvexPolygon> out;
  for (const SimilarityMap& m : plan_maps(uifs, plan, n, max_pieces)) out.push_back(m.apply(hull));
  return out;
}

double plan_separation(const Uifs& uifs, const ConvexPolygon& hull, const NestedPlan& plan, int n,
                       std::size_t max_pieces) {
  if (n < 1) fail(ErrorKind::Input, "separation needs n >= 1");
  const Angle dir(plan.theta);
  const auto& chosen = plan.levels[static_cast<std::size_t>(n - 1)].chosen;
  double best = std::numeric_limits<double>::infinity();
  for (const SimilarityMap& parent : plan_maps(uifs, plan, n - 1, max_pieces)) {
    std::vector<Interval> ivs;
    for (std::uint16_t j : chosen) ivs.push_back(project(compose(parent, uifs.maps[j]).apply(hull), dir));
    std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < ivs.size(); ++i) best = std::min(best, ivs[i].lo - ivs[i - 1].hi);
  }
  return best / std::pow(uifs.scale, n);
}

RotationalCertificate certify_rotational(const NestedPlan& plan, double eps, const ConvexPolygon& hull,
                                         const Ifs& parent) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorKind::Input, "epsilon must lie in (0, 1)");
  const double diam = hull.diameter();
  const double nu = min_width(hull).width;
  NestedStats stats;
  for (std::size_t n = 0; n < plan.levels.size(); ++n) {
    const double d = std::pow(plan.scale, static_cast<double>(n + 1)) * diam;
    stats.levels.push_back({static_cast<double>(plan.levels[n].chosen.size()), d, d});
  }
  RotationalCertificate c;
  c.hata = hata_bound(stats);
  c.dimension_margin = c.hata.bound - (1.0 - eps);
  c.dimension_pass = c.dimension_margin >= -kGeomTol;
  c.realized_lipschitz = diam / plan.scale;
  double prod = 1.0;
  for (double r : parent.scales()) prod *= r;
  c.formula_lipschitz = diam / prod * std::max(1.0 / nu, 1.0) *
                        std::exp(20.0 * static_cast<double>(parent.size()) / eps * std::log(1.0 / eps));
  c.lipschitz_pass = c.realized_lipschitz <= c.formula_lipschitz * (1.0 + 1e-12);
  for (const PlanLevel& l : plan.levels) c.good_levels += l.good ? 1 : 0;
  return c;
}

}  // namespace lipgraph
