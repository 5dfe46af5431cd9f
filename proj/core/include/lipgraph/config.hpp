#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lipgraph/ifs.hpp"

namespace lipgraph {

enum class Pipeline { RotationFree, Rotational, Cantor4AdHoc, Cantor4Generic };

std::string_view to_string(Pipeline p);
Pipeline parse_pipeline(std::string_view name);

struct RunConfig {
  Pipeline pipeline = Pipeline::RotationFree;
  std::vector<SimilarityMap> maps;
  bool osc = false;
  std::optional<std::vector<Point>> seed_polygon;

  double epsilon = 0.5;
  int grid = 1024;
  std::uint64_t seed = 0;
  int depth = 3;  // graph levels
  std::size_t max_pieces = kDefaultPieceCap;
  std::size_t graph_pieces = 200'000;  // per graph level

  double c_m = 1.0;
  double a = 1.0;
  double b = 1.0;
  double omega = 1.0;
  double c_e = 1.0;

  double eta = 0.5;
  int n_max = 20;

  bool timings = false;

  Ifs ifs() const;
};

/// TOML layout:
///   pipeline = "rotfree" | "rotational" | "cantor4-adhoc" | "cantor4-generic"
///   epsilon, grid, seed, depth, max_pieces, graph_pieces, osc, timings, preset
///   [[map]] r, theta | theta_pi = [p, q], z = [x, y]
///   [seed_set] polygon = [[x, y], ...]
///   [constants] c_M, a, b, omega, c_e
///   [rotational] eta, n_max
/// Unknown keys are rejected.
RunConfig parse_config(std::string_view toml_text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace lipgraph
