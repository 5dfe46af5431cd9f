#include "lipgraph/report.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>

#include <json.hpp>

#include "lipgraph/cantor4.hpp"
#include "lipgraph/dimension.hpp"
#include "lipgraph/favard.hpp"
#include "lipgraph/graph.hpp"
#include "lipgraph/rotational.hpp"
#include "lipgraph/subifs.hpp"
#include "lipgraph/svg.hpp"

namespace lipgraph {

using nlohmann::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input:
    case ErrorKind::Precondition:
    case ErrorKind::Unsupported:
      return kExitInputError;
    case ErrorKind::Resource:
      return kExitResourceCap;
    default:
      return kExitCertificateFail;
  }
}

namespace {

json tagged(double value, const std::string& source) {
  return json{{"value", std::isfinite(value) ? json(value) : json(nullptr)}, {"source", source}};
}

json word_json(const Word& w) {
  json out = json::array();
  for (std::uint16_t j : w) out.push_back(j + 1);
  return out;
}

json certificate(const std::string& name, bool pass, double value, double bound, const std::string& relation) {
  return json{{"name", name}, {"pass", pass}, {"value", tagged(value, "measured")},
              {"bound", tagged(bound, relation)}};
}

json map_json(const SimilarityMap& m) {
  json j{{"r", m.scale}, {"theta", m.rotation}, {"z", {m.shift.x, m.shift.y}}};
  if (m.rotation_pi) j["theta_pi"] = {m.rotation_pi->num, m.rotation_pi->den};
  return j;
}

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled) {}
  void mark(const std::string& stage) {
    if (!enabled_) return;
    const auto now = std::chrono::steady_clock::now();
    times_[stage] = std::chrono::duration<double>(now - last_).count();
    last_ = now;
  }
  const json& times() const { return times_; }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  json times_ = json::object();
};

struct Outcome {
  json sections = json::object();
  json certificates = json::array();
  std::vector<Level> levels;
  Frame frame;
  std::optional<GraphBuild> graph;
  json dims = json::object();
};

int affordable_depth(double per_level_branching, int wanted, std::size_t cap) {
  int depth = 1;
  while (depth < wanted && std::pow(per_level_branching, depth + 1) <= static_cast<double>(cap)) ++depth;
  return depth;
}

NestedStats stats_from_levels(const std::vector<Level>& levels) {
  NestedStats stats;
  double previous = 1.0;
  for (const Level& lv : levels) {
    double lo = 1e300, hi = 0.0;
    for (const ConvexPolygon& p : lv) {
      const double d = p.diameter();
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    stats.levels.push_back({static_cast<double>(lv.size()) / previous, hi, lo});
    previous = static_cast<double>(lv.size());
  }
  return stats;
}

json hata_json(const HataBound& h) {
  return json{{"bound", tagged(h.bound, "min over the last half of log v_{n-1} / log(d_{n-1} / d_n)")},
              {"ratio_tail_min", tagged(h.ratio_tail_min, "min over the last half of log(v_1...v_{n-1}) / -log d_n")},
              {"ratios", h.ratios},
              {"increments", h.increments}};
}

// Graph through the levels, with certificates against `lambda_bound`.
void add_graph(Outcome& out, const Frame& frame, double lambda_bound, const std::string& bound_source,
               std::optional<double> sigma_hint = std::nullopt) {
  out.frame = frame;
  const GraphHypotheses hyp = verify_hypotheses(out.levels, frame, sigma_hint);
  GraphBuild build = build_graph(out.levels, frame, hyp);
  json contain = json::array();
  bool all_contained = true;
  for (std::size_t n = 0; n < out.levels.size(); ++n) {
    const Containment c = containment_check(out.levels[n], build.graphs[n], build.cauchy_bounds[n]);
    all_contained = all_contained && c.pass;
    contain.push_back({{"level", n + 1}, {"max_distance", c.max_distance}, {"radius", c.radius}, {"pass", c.pass}});
  }
  out.sections["graph"] = {
      {"frame_theta", tagged(frame.theta(), "frame angle")},
      {"levels", out.levels.size()},
      {"pieces_per_level", [&] {
         json a = json::array();
         for (const Level& l : out.levels) a.push_back(l.size());
         return a;
       }()},
      {"lambda", tagged(hyp.lambda, "max of piece height/width and connector slopes over all levels")},
      {"piece_ratio", tagged(hyp.piece_ratio, "max piece height/width in the frame")},
      {"connector_slope", tagged(hyp.connector_slope, "max slope between consecutive pieces")},
      {"c", tagged(hyp.c, "max over n of max(D_n, diam_n) / sigma^n")},
      {"sigma", tagged(hyp.sigma, sigma_hint ? "supplied" : "max ratio of consecutive sup differences and diameters")},
      {"measured_lipschitz", tagged(build.measured_lipschitz, "max segment slope over all level graphs")},
      {"sup_differences", build.sup_differences},
      {"cauchy_bounds", build.cauchy_bounds},
      {"tail_bound", tagged(build.tail_bound, "c sigma^L / (1 - sigma)")},
      {"containment", contain}};
  out.certificates.push_back(certificate("graph_lipschitz", build.measured_lipschitz <= lambda_bound * (1.0 + 1e-9) + 1e-9,
                                         build.measured_lipschitz, lambda_bound, bound_source));
  bool cauchy = true;
  for (std::size_t n = 0; n < build.sup_differences.size(); ++n) {
    cauchy = cauchy && build.sup_differences[n] <= build.cauchy_bounds[n] + kGeomTol;
  }
  out.certificates.push_back({{"name", "cauchy"}, {"pass", cauchy}});
  out.certificates.push_back({{"name", "containment"}, {"pass", all_contained}});
  out.graph = std::move(build);
}

Outcome run_family(const RunConfig& cfg, bool adhoc, Stopwatch& clock) {
  Outcome out;
  const int m = adhoc ? adhoc_depth_for(cfg.epsilon) : generic_depth_for(cfg.epsilon);
  const C4Family fam = adhoc ? adhoc_family(m) : generic_family(m);
  json words = json::array();
  for (const Word& w : fam.words) words.push_back(word_json(w));
  const double matching_eps = 1.0 - fam.dimension;
  const double envelope = adhoc ? adhoc_envelope(matching_eps) : generic_envelope(matching_eps);
  out.sections["family"] = {
      {"kind", adhoc ? "adhoc" : "generic"},
      {"m", m},
      {"words", words},
      {"similarity_dimension", tagged(fam.dimension, "root of sum r_w^s = 1 over the family")},
      {"theta", tagged(fam.theta, adhoc ? "arctan of the closed-form slope" : "pi/2 - (arctan(2 + 12/4^m) + arctan(2 - 6/4^m)) / 2")},
      {"lambda", tagged(fam.lambda, "closed form")},
      {"envelope", tagged(envelope, adhoc ? "(5/3)(2 c_L)^2 eps^-2 at eps = 1 - s_m" : "(41/36) 2^(1/eps) at eps = 1 - s_m")}};
  out.certificates.push_back(certificate("dimension", fam.dimension >= 1.0 - cfg.epsilon - kGeomTol, fam.dimension,
                                         1.0 - cfg.epsilon, "1 - epsilon"));
  out.certificates.push_back(certificate("lambda_envelope", fam.lambda <= envelope, fam.lambda, envelope, "envelope"));
  clock.mark("family");

  const int depth = affordable_depth(static_cast<double>(fam.words.size()), cfg.depth, cfg.graph_pieces);
  out.levels = family_levels(fam, depth);
  clock.mark("levels");
  add_graph(out, Frame(fam.theta), fam.lambda, "closed-form lambda_m");
  clock.mark("graph");
  out.dims["similarity_dimension"] = tagged(fam.dimension, "family");
  out.dims["hata"] = hata_json(hata_bound(stats_from_levels(out.levels)));
  return out;
}

Outcome run_rotfree(const RunConfig& cfg, Stopwatch& clock) {
  Outcome out;
  const Ifs ifs = cfg.ifs();
  const DepthChoice d = choose_depth(cfg.epsilon, ifs.size(), ifs.max_scale());
  ExtractOptions opts{.grid = AngleGrid(cfg.grid), .c_m = cfg.c_m, .b = cfg.b, .max_pieces = cfg.max_pieces};
  const SubIfs sub = extract_separated_subifs(ifs, d.m, opts);
  const SubIfsCertificate cert = certify(sub, cfg.epsilon, ifs.size(), ifs.max_scale());
  clock.mark("extract");
  json words = json::array();
  for (const Word& w : sub.words) words.push_back(word_json(w));
  out.sections["subifs"] = {
      {"m", d.m},
      {"c2", tagged(d.c2, "max{1, 3 / log(1/r_N)}")},
      {"c0", tagged(d.c0, "c2 log(4N / r_N)")},
      {"theta", tagged(sub.theta.radians(), "grid angle of largest projection of generation m")},
      {"projection", tagged(sub.projection, "|P_theta C_m|")},
      {"nu", tagged(sub.nu, "minimal width of the attractor hull")},
      {"diameter", tagged(sub.diameter, "diameter of the attractor hull")},
      {"delta", tagged(sub.delta, "nu (r_N / 4N)^m")},
      {"selected", sub.words.size()},
      {"small_pieces", sub.small_pieces},
      {"words", words},
      {"similarity_dimension", tagged(sub.dimension, "root of sum r_w^s = 1 over the selected words")},
      {"s0", tagged(sub.s0, "1 - (log m + log c1) / (m log(1/r_N))")},
      {"lipschitz_bound", tagged(sub.lipschitz_bound, "diam / delta")},
      {"lipschitz_formula", tagged(cert.lipschitz_formula, "(diam / nu) exp(c0 eps^-1 log eps^-1)")},
      {"degenerate", sub.degenerate}};
  out.certificates.push_back(certificate("dimension", cert.dimension_pass, sub.dimension, 1.0 - cfg.epsilon, "1 - epsilon"));
  out.certificates.push_back(certificate("lipschitz_formula", cert.lipschitz_pass, sub.lipschitz_bound,
                                         cert.lipschitz_formula, "(diam / nu) exp(c0 eps^-1 log eps^-1)"));
  out.dims["similarity_dimension"] = tagged(sub.dimension, "selected sub-system");
  if (sub.degenerate) return out;

  const int depth = affordable_depth(static_cast<double>(sub.sub_ifs.size()), cfg.depth, cfg.graph_pieces);
  for (int n = 1; n <= depth; ++n) out.levels.push_back(generation(sub.sub_ifs, sub.seed, n, cfg.max_pieces).polygons());
  clock.mark("levels");
  add_graph(out, Frame(sub.theta.radians()), sub.lipschitz_bound, "diam / delta");
  clock.mark("graph");
  out.dims["hata"] = hata_json(hata_bound(stats_from_levels(out.levels)));
  return out;
}

Outcome run_rotational(const RunConfig& cfg, Stopwatch& clock) {
  Outcome out;
  const Ifs ifs = cfg.ifs();
  const Uifs u = uniformize(ifs, cfg.eta);
  const ConvexPolygon hull = cfg.seed_polygon ? ConvexPolygon::hull(*cfg.seed_polygon) : invariant_hull(ifs);
  for (const SimilarityMap& m : ifs.maps()) {
    if (!hull.contains(m.apply(hull), 1e-9)) fail(ErrorKind::Input, "seed polygon is not mapped into itself");
  }
  clock.mark("uniformize");
  const AngleGrid grid(cfg.grid);
  const GoodAngles good = good_angle_set(u, hull, 1, cfg.epsilon, grid,
                                         {.a = cfg.a, .b = cfg.b, .omega = cfg.omega, .c_e = cfg.c_e});
  clock.mark("good_angles");
  const std::vector<AngleSet> sets{good.set};
  const PersistentAngle pa = find_persistent_angle(u, sets, cfg.epsilon, cfg.n_max, grid, good.counts);
  const NestedPlan plan = build_nested_plan(u, hull, pa.theta, cfg.epsilon, cfg.n_max);
  const RotationalCertificate cert = certify_rotational(plan, cfg.epsilon, hull, ifs);
  clock.mark("plan");

  json words = json::array();
  for (const Word& w : u.words) words.push_back(word_json(w));
  json levels = json::array();
  for (const PlanLevel& l : plan.levels) {
    json chosen = json::array();
    for (std::uint16_t j : l.chosen) chosen.push_back(j + 1);
    levels.push_back({{"n", l.n}, {"frame_angle", l.frame_angle}, {"count", l.chosen.size()}, {"chosen", chosen},
                      {"min_gap", std::isfinite(l.min_gap) ? json(l.min_gap) : json(nullptr)}, {"good", l.good}});
  }
  out.sections["uniform"] = {
      {"kappa", u.kappa},
      {"maps", u.words.size()},
      {"family_size", u.family_size},
      {"already_uniform", u.already_uniform},
      {"scale", tagged(u.scale, "common ratio of the kept words")},
      {"rotation_pi", {u.rotation.num, u.rotation.den}},
      {"gamma", tagged(u.gamma, "log N / log(1/r)")},
      {"r_bracket", {{"lower", u.r_bracket.lower}, {"upper", u.r_bracket.upper}, {"within", u.r_bracket.within}}},
      {"kappa_window", {{"lower", u.kappa_window.lower}, {"upper", u.kappa_window.upper}, {"within", u.kappa_window.within}}},
      {"words", words}};
  out.sections["angles"] = {
      {"threshold", tagged(good.threshold, "eps delta0 r^(-n gamma), n = 1")},
      {"delta0", tagged(good.delta0, "good-projection constant")},
      {"measure_lower_bound", tagged(good.measure_lower_bound, "a nu / (8 omega b diam^(1-gamma)) r^(1-gamma)")},
      {"overlap", good.overlap},
      {"good_measure", tagged(good.set.measure(), "measure of the good-angle set")},
      {"persistent_theta", tagged(pa.theta, "grid angle maximising the minimal visit density")},
      {"min_density", tagged(pa.min_density, "min over n of D(n; theta)")}};
  out.sections["plan"] = {{"theta", plan.theta}, {"levels", levels},
                          {"good_levels", cert.good_levels},
                          {"realized_lipschitz", tagged(cert.realized_lipschitz, "diam(K) / r")},
                          {"formula_lipschitz", tagged(cert.formula_lipschitz, "diam(K) / prod r_k max{1/nu, 1} exp(20 M eps^-1 log eps^-1)")}};
  out.certificates.push_back(certificate("density", pa.min_density >= 1.0 - cfg.epsilon / 2.0, pa.min_density,
                                         1.0 - cfg.epsilon / 2.0, "1 - eps/2"));
  out.certificates.push_back(certificate("dimension", cert.dimension_pass, cert.hata.bound, 1.0 - cfg.epsilon, "1 - epsilon"));
  out.certificates.push_back(certificate("lipschitz_formula", cert.lipschitz_pass, cert.realized_lipschitz,
                                         cert.formula_lipschitz, "formula"));
  out.dims["uniform_dimension"] = tagged(u.gamma, "log N / log(1/r)");
  out.dims["hata"] = hata_json(cert.hata);

  const int depth = std::min(cfg.n_max, cfg.depth);
  double min_sep = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= depth; ++n) {
    if (plan.log_components[static_cast<std::size_t>(n - 1)] > std::log(static_cast<double>(cfg.graph_pieces))) break;
    out.levels.push_back(plan_pieces(u, hull, plan, n, cfg.graph_pieces));
    if (out.levels.back().size() > 1) min_sep = std::min(min_sep, plan_separation(u, hull, plan, n, cfg.graph_pieces));
  }
  out.certificates.push_back(certificate("separation", !(min_sep < 1.0 - 1e-9), std::isfinite(min_sep) ? min_sep : 1.0,
                                         1.0, "sibling gap / r^n"));
  clock.mark("levels");
  const double nu = min_width(hull).width;
  add_graph(out, Frame(plan.theta), std::max(cert.realized_lipschitz, hull.diameter() / nu), "max(diam/r, diam/nu)");
  clock.mark("graph");
  return out;
}

Outcome dispatch(const RunConfig& cfg, Stopwatch& clock) {
  switch (cfg.pipeline) {
    case Pipeline::RotationFree: return run_rotfree(cfg, clock);
    case Pipeline::Rotational: return run_rotational(cfg, clock);
    case Pipeline::Cantor4AdHoc: return run_family(cfg, true, clock);
    case Pipeline::Cantor4Generic: return run_family(cfg, false, clock);
  }
  fail(ErrorKind::Input, "unknown pipeline");
}

json config_json(const RunConfig& cfg) {
  json maps = json::array();
  for (const SimilarityMap& m : cfg.maps) maps.push_back(map_json(m));
  return json{{"pipeline", to_string(cfg.pipeline)}, {"epsilon", cfg.epsilon}, {"grid", cfg.grid},
              {"seed", cfg.seed}, {"depth", cfg.depth}, {"osc", cfg.osc}, {"maps", maps},
              {"eta", cfg.eta}, {"n_max", cfg.n_max}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SvgScene scene_for(const Outcome& out, const std::string& title) {
  SvgScene scene;
  scene.title = title;
  if (!out.levels.empty()) scene.pieces = out.levels.back();
  if (out.graph) scene.polylines.push_back(out.graph->graphs.back().world_polyline());
  if (out.graph) scene.frame = out.frame;
  return scene;
}

}  // namespace

RunOutput run(const RunConfig& cfg) {
  Stopwatch clock(cfg.timings);
  Outcome out = dispatch(cfg, clock);
  bool pass = true;
  for (const json& c : out.certificates) pass = pass && c.at("pass").get<bool>();
  json doc{{"schema", 1}, {"pipeline", to_string(cfg.pipeline)}, {"config", config_json(cfg)}};
  for (auto& [key, value] : out.sections.items()) doc[key] = value;
  doc["dimension"] = out.dims;
  doc["certificates"] = out.certificates;
  doc["pass"] = pass;
  if (cfg.timings) doc["timings"] = clock.times();
  RunOutput result;
  result.json = dump(doc);
  result.svg = render_svg(scene_for(out, std::string(to_string(cfg.pipeline))));
  result.pass = pass;
  return result;
}

std::string favard_report(const RunConfig& cfg, int depth) {
  const Ifs ifs = cfg.ifs();
  const ConvexPolygon seed = cfg.seed_polygon ? ConvexPolygon::hull(*cfg.seed_polygon) : attractor_hull(ifs).hull;
  const Generation gen = generation(ifs, seed, depth, cfg.max_pieces);
  const FavardReport f = favard_length(gen, AngleGrid(cfg.grid));
  json doc{{"schema", 1},
           {"depth", depth},
           {"pieces", gen.pieces.size()},
           {"favard", tagged(f.value, "midpoint rule over the angle grid")},
           {"best_angle", tagged(f.best_angle, "grid argmax")},
           {"best_length", tagged(f.best_length, "grid max")},
           {"angles", f.angles},
           {"lengths", f.lengths}};
  return dump(doc);
}

std::string graph_report(const RunConfig& cfg) {
  Stopwatch clock(false);
  const Outcome out = dispatch(cfg, clock);
  json graphs = json::array();
  if (out.graph) {
    for (std::size_t n = 0; n < out.graph->graphs.size(); ++n) {
      const PLGraph& g = out.graph->graphs[n];
      json pts = json::array();
      for (std::size_t i = 0; i < g.xs().size(); ++i) pts.push_back({g.xs()[i], g.ys()[i]});
      graphs.push_back({{"level", n + 1}, {"breakpoints", pts}});
    }
  }
  json doc{{"schema", 1}, {"pipeline", to_string(cfg.pipeline)},
           {"frame_theta", out.frame.theta()}, {"graphs", graphs}};
  return dump(doc);
}

std::string dims_report(const RunConfig& cfg) {
  Stopwatch clock(false);
  const Outcome out = dispatch(cfg, clock);
  json doc{{"schema", 1}, {"pipeline", to_string(cfg.pipeline)}, {"dimension", out.dims}};
  if (!cfg.maps.empty()) doc["ifs_similarity_dimension"] = tagged(cfg.ifs().similarity_dimension(), "root of sum r_i^s = 1");
  return dump(doc);
}

std::string render_report(const RunConfig& cfg, int depth) {
  if (cfg.maps.empty()) {
    Stopwatch clock(false);
    return render_svg(scene_for(dispatch(cfg, clock), std::string(to_string(cfg.pipeline))));
  }
  const Ifs ifs = cfg.ifs();
  const ConvexPolygon seed = cfg.seed_polygon ? ConvexPolygon::hull(*cfg.seed_polygon) : attractor_hull(ifs).hull;
  SvgScene scene;
  scene.title = "generation " + std::to_string(depth);
  scene.pieces = generation(ifs, seed, depth, cfg.max_pieces).polygons();
  return render_svg(scene);
}

}  // namespace lipgraph
