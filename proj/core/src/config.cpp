#include "lipgraph/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "lipgraph/error.hpp"

namespace lipgraph {

std::string_view to_string(Pipeline p) {
  switch (p) {
    case Pipeline::RotationFree: return "rotfree";
    case Pipeline::Rotational: return "rotational";
    case Pipeline::Cantor4AdHoc: return "cantor4-adhoc";
    case Pipeline::Cantor4Generic: return "cantor4-generic";
  }
  return "unknown";
}

Pipeline parse_pipeline(std::string_view name) {
  for (Pipeline p : {Pipeline::RotationFree, Pipeline::Rotational, Pipeline::Cantor4AdHoc,
                     Pipeline::Cantor4Generic}) {
    if (to_string(p) == name) return p;
  }
  fail(ErrorKind::Input, "unknown pipeline '" + std::string(name) + "'");
}

Ifs RunConfig::ifs() const {
  if (maps.empty()) fail(ErrorKind::Input, "config defines no maps");
  return Ifs(maps, osc);
}

namespace {

void reject_unknown(const toml::table& table, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, node] : table) {
    (void)node;
    if (!allowed.contains(std::string(key.str()))) {
      fail(ErrorKind::Input, "unknown key '" + std::string(key.str()) + "' in " + where);
    }
  }
}

double number(const toml::node& node, const std::string& what) {
  if (auto v = node.value<double>()) return *v;
  fail(ErrorKind::Input, what + " must be a number");
}

template <class T>
void read_number(const toml::table& t, const char* key, T& out) {
  if (const toml::node* n = t.get(key)) {
    if constexpr (std::is_integral_v<T>) {
      auto v = n->value<std::int64_t>();
      if (!v || *v < 0) fail(ErrorKind::Input, std::string(key) + " must be a non-negative integer");
      out = static_cast<T>(*v);
    } else {
      out = number(*n, key);
    }
  }
}

Point read_point(const toml::node& node, const std::string& what) {
  const toml::array* arr = node.as_array();
  if (!arr || arr->size() != 2) fail(ErrorKind::Input, what + " must be [x, y]");
  return {number((*arr)[0], what), number((*arr)[1], what)};
}

SimilarityMap read_map(const toml::table& t, std::size_t index) {
  const std::string where = "map " + std::to_string(index + 1);
  reject_unknown(t, {"r", "theta", "theta_pi", "z"}, where);
  if (!t.contains("r") || !t.contains("z")) fail(ErrorKind::Input, where + " needs r and z");
  const double r = number(*t.get("r"), where + ".r");
  const Point z = read_point(*t.get("z"), where + ".z");
  if (t.contains("theta") && t.contains("theta_pi")) {
    fail(ErrorKind::Input, where + " sets both theta and theta_pi");
  }
  if (const toml::node* q = t.get("theta_pi")) {
    const toml::array* arr = q->as_array();
    if (!arr || arr->size() != 2) fail(ErrorKind::Input, where + ".theta_pi must be [p, q]");
    auto p = (*arr)[0].value<std::int64_t>();
    auto d = (*arr)[1].value<std::int64_t>();
    if (!p || !d) fail(ErrorKind::Input, where + ".theta_pi must hold integers");
    return SimilarityMap::make(r, RationalAngle::make(*p, *d), z);
  }
  const double theta = t.contains("theta") ? number(*t.get("theta"), where + ".theta") : 0.0;
  return SimilarityMap::make(r, theta, z);
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config parse error: " << e.description() << " at line " << e.source().begin.line;
    fail(ErrorKind::Input, msg.str());
  }
  reject_unknown(root,
                 {"pipeline", "epsilon", "grid", "seed", "depth", "max_pieces", "graph_pieces", "osc",
                  "timings", "preset", "map", "seed_set", "constants", "rotational"},
                 "the top level");
  RunConfig cfg;
  if (auto p = root["pipeline"].value<std::string>()) {
    cfg.pipeline = parse_pipeline(*p);
  } else if (root.contains("pipeline")) {
    fail(ErrorKind::Input, "pipeline must be a string");
  }
  read_number(root, "epsilon", cfg.epsilon);
  read_number(root, "grid", cfg.grid);
  read_number(root, "seed", cfg.seed);
  read_number(root, "depth", cfg.depth);
  read_number(root, "max_pieces", cfg.max_pieces);
  read_number(root, "graph_pieces", cfg.graph_pieces);
  if (const toml::node* n = root.get("osc")) {
    auto v = n->value<bool>();
    if (!v) fail(ErrorKind::Input, "osc must be a boolean");
    cfg.osc = *v;
  }
  if (const toml::node* n = root.get("timings")) {
    auto v = n->value<bool>();
    if (!v) fail(ErrorKind::Input, "timings must be a boolean");
    cfg.timings = *v;
  }

  if (const toml::node* n = root.get("preset")) {
    auto name = n->value<std::string>();
    if (!name) fail(ErrorKind::Input, "preset must be a string");
    if (root.contains("map")) fail(ErrorKind::Input, "preset and [[map]] are mutually exclusive");
    Ifs ifs = Ifs::cantor4();
    if (*name == "cantor4") {
    } else if (name->rfind("cantor", 0) == 0) {
      try {
        ifs = Ifs::cantor_k(std::stoi(name->substr(6)));
      } catch (const std::logic_error&) {
        fail(ErrorKind::Input, "unknown preset '" + *name + "'");
      }
    } else {
      fail(ErrorKind::Input, "unknown preset '" + *name + "'");
    }
    cfg.maps.assign(ifs.maps().begin(), ifs.maps().end());
    if (!root.contains("osc")) cfg.osc = true;
  }
  if (const toml::node* n = root.get("map")) {
    const toml::array* arr = n->as_array();
    if (!arr) fail(ErrorKind::Input, "map must be an array of tables ([[map]])");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const toml::table* t = (*arr)[i].as_table();
      if (!t) fail(ErrorKind::Input, "map entries must be tables");
      cfg.maps.push_back(read_map(*t, i));
    }
  }

  if (const toml::node* n = root.get("seed_set")) {
    const toml::table* t = n->as_table();
    if (!t) fail(ErrorKind::Input, "seed_set must be a table");
    reject_unknown(*t, {"polygon"}, "[seed_set]");
    const toml::array* arr = (*t)["polygon"].as_array();
    if (!arr || arr->size() < 3) fail(ErrorKind::Input, "seed_set.polygon needs at least 3 points");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < arr->size(); ++i) pts.push_back(read_point((*arr)[i], "seed_set.polygon"));
    cfg.seed_polygon = std::move(pts);
  }
  if (const toml::node* n = root.get("constants")) {
    const toml::table* t = n->as_table();
    if (!t) fail(ErrorKind::Input, "constants must be a table");
    reject_unknown(*t, {"c_M", "a", "b", "omega", "c_e"}, "[constants]");
    read_number(*t, "c_M", cfg.c_m);
    read_number(*t, "a", cfg.a);
    read_number(*t, "b", cfg.b);
    read_number(*t, "omega", cfg.omega);
    read_number(*t, "c_e", cfg.c_e);
  }
  if (const toml::node* n = root.get("rotational")) {
    const toml::table* t = n->as_table();
    if (!t) fail(ErrorKind::Input, "rotational must be a table");
    reject_unknown(*t, {"eta", "n_max"}, "[rotational]");
    read_number(*t, "eta", cfg.eta);
    read_number(*t, "n_max", cfg.n_max);
  }

  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) fail(ErrorKind::Input, "epsilon must lie in (0, 1)");
  if (cfg.grid < 8) fail(ErrorKind::Input, "grid must be at least 8");
  if (cfg.depth < 1) fail(ErrorKind::Input, "depth must be at least 1");
  if (cfg.n_max < 1) fail(ErrorKind::Input, "n_max must be at least 1");
  const bool needs_maps = cfg.pipeline == Pipeline::RotationFree || cfg.pipeline == Pipeline::Rotational;
  if (needs_maps && cfg.maps.empty()) fail(ErrorKind::Input, "this pipeline needs [[map]] entries or a preset");
  if (!needs_maps && cfg.maps.empty()) {
    const Ifs c4 = Ifs::cantor4();
    cfg.maps.assign(c4.maps().begin(), c4.maps().end());
    cfg.osc = true;
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Input, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace lipgraph
