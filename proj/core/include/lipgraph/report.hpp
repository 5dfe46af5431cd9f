#pragma once

#include <string>

#include "lipgraph/config.hpp"
#include "lipgraph/error.hpp"

namespace lipgraph {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCertificateFail = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitResourceCap = 3;

int exit_code_for(ErrorKind kind);

struct RunOutput {
  std::string json;  // schema 1 report
  std::string svg;
  bool pass = false;
};

/// Runs the configured pipeline. Identical configs give byte-identical output.
RunOutput run(const RunConfig& config);

/// Favard length of generation `depth` of the configured IFS.
std::string favard_report(const RunConfig& config, int depth);
/// Breakpoints of every graph level in frame coordinates.
std::string graph_report(const RunConfig& config);
/// Similarity dimensions and Hata bounds along the pipeline.
std::string dims_report(const RunConfig& config);
/// Pieces of generation `depth` of the configured IFS, plus graphs when the
/// pipeline produces them.
std::string render_report(const RunConfig& config, int depth);

}  // namespace lipgraph
