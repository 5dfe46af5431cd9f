#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lipgraph/config.hpp"
#include "lipgraph/error.hpp"
#include "lipgraph/report.hpp"

namespace {

struct Options {
  std::string config;
  std::optional<double> epsilon;
  std::optional<int> depth;
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string svg;
};

lipgraph::RunConfig load(const Options& o) {
  lipgraph::RunConfig cfg = lipgraph::load_config(o.config);
  if (o.epsilon) {
    if (!(*o.epsilon > 0.0 && *o.epsilon < 1.0)) lipgraph::fail(lipgraph::ErrorKind::Input, "epsilon must lie in (0, 1)");
    cfg.epsilon = *o.epsilon;
  }
  if (o.depth) cfg.depth = *o.depth;
  if (o.grid) {
    if (*o.grid < 8) lipgraph::fail(lipgraph::ErrorKind::Input, "grid must be at least 8");
    cfg.grid = *o.grid;
  }
  if (o.seed) cfg.seed = *o.seed;
  return cfg;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) lipgraph::fail(lipgraph::ErrorKind::Input, "cannot write " + path);
  f << text;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "TOML run configuration")->required()->check(CLI::ExistingFile);
  cmd->add_option("--epsilon", o.epsilon, "dimension loss target in (0, 1)");
  cmd->add_option("--depth", o.depth, "number of levels or generation depth");
  cmd->add_option("--grid", o.grid, "angle grid resolution (>= 8)");
  cmd->add_option("--seed", o.seed, "random seed recorded in the report");
  cmd->add_option("--out", o.out, "output file ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz graphs through large subsets of self-similar sets"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "run a pipeline and write its JSON report");
  add_common(run, o);
  run->add_option("--svg", o.svg, "also write the figure to this SVG file");
  auto* favard = app.add_subcommand("favard", "Favard length of one generation");
  add_common(favard, o);
  auto* graph = app.add_subcommand("graph", "graph breakpoints in frame coordinates");
  add_common(graph, o);
  auto* dims = app.add_subcommand("dims", "dimension estimates");
  add_common(dims, o);
  auto* render = app.add_subcommand("render", "SVG figure of a generation or of the pipeline");
  add_common(render, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lipgraph::kExitInputError;
  }

  try {
    const lipgraph::RunConfig cfg = load(o);
    if (run->parsed()) {
      const lipgraph::RunOutput result = lipgraph::run(cfg);
      emit(result.json, o.out);
      if (!o.svg.empty()) emit(result.svg, o.svg);
      return result.pass ? lipgraph::kExitPass : lipgraph::kExitCertificateFail;
    }
    if (favard->parsed()) emit(lipgraph::favard_report(cfg, o.depth.value_or(cfg.depth)), o.out);
    if (graph->parsed()) emit(lipgraph::graph_report(cfg), o.out);
    if (dims->parsed()) emit(lipgraph::dims_report(cfg), o.out);
    if (render->parsed()) emit(lipgraph::render_report(cfg, o.depth.value_or(cfg.depth)), o.out);
    return lipgraph::kExitPass;
  } catch (const lipgraph::Error& e) {
    std::cerr << "lipgraph: " << lipgraph::to_string(e.kind()) << " error: " << e.what() << '\n';
    return lipgraph::exit_code_for(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "lipgraph: out of memory\n";
    return lipgraph::kExitResourceCap;
  }
}
