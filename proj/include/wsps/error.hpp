#pragma once

#include <stdexcept>
#include <string>

namespace wsps {

// Base of every error the library throws. kind() is a stable short tag used
// by the CLI for its machine-parsable error line.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// A solution or route references something the instance does not contain.
struct ModelError : Error {
  explicit ModelError(const std::string& what) : Error("model", what) {}
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& what) : Error("parameter", what) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error("format", what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("io", what) {}
};

class ConstructionError : public Error {
 public:
  ConstructionError(int node, const std::string& what)
      : Error("construction", what), node_(node) {}
  int node() const noexcept { return node_; }

 private:
  int node_;
};

struct OracleSizeError : Error {
  explicit OracleSizeError(const std::string& what) : Error("oracle-size", what) {}
};

struct InfeasibleError : Error {
  explicit InfeasibleError(const std::string& what) : Error("infeasible", what) {}
};

// A variable assignment does not cover the model it is checked against.
struct AssignmentError : Error {
  explicit AssignmentError(const std::string& what) : Error("assignment", what) {}
};

struct AggregationError : Error {
  explicit AggregationError(const std::string& what) : Error("aggregation", what) {}
};

}  // namespace wsps
