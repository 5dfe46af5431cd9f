#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lipgraph {

enum class ErrorKind {
  Input,          // malformed config or argument
  Precondition,   // a documented precondition does not hold
  Resource,       // piece or memory cap exceeded
  Unsupported,    // input outside the supported class (e.g. irrational rotation)
  Extraction,     // no separated sub-family could be found
  Uniformization,
  PersistentAngle,
  Hypothesis,     // graph-construction hypotheses fail
  Graph,          // pieces cannot be threaded by a single graph
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace lipgraph
