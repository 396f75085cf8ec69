// Copyright 2026 The atomplex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace atomplex {

/// Malformed circuit text. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + msg),
        line_(line), column_(column) {}

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A circuit whose widest layer exceeds the array capacity.
class UnplaceableError : public std::runtime_error {
public:
  explicit UnplaceableError(std::string circuit)
      : std::runtime_error("circuit '" + circuit +
                           "' is wider than the array capacity"),
        circuit_(std::move(circuit)) {}

  [[nodiscard]] const std::string& circuit() const { return circuit_; }

private:
  std::string circuit_;
};

/// Inconsistent compiled schedule handed to the cycle decomposition.
class DecompositionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Rejected ArrayOccupancy::commit.
class CommitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Solver model lacks a declared variable, or no model is available.
class ExtractionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Metric with a zero denominator.
class MetricError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Invalid experiment configuration or command line.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class CompileFailure {
  Timeout,     ///< time budget exhausted
  GridTooSmall,///< the circuit cannot fit the grid at all
  Infeasible,  ///< no progress possible against the committed occupancy
};

[[nodiscard]] inline const char* to_string(CompileFailure f) {
  switch (f) {
  case CompileFailure::Timeout:
    return "timeout";
  case CompileFailure::GridTooSmall:
    return "grid-too-small";
  case CompileFailure::Infeasible:
    return "infeasible";
  }
  return "unknown";
}

/// Failure of a single-circuit compilation. Carries the progress made
/// before the failure (stages committed, gates scheduled).
class CompileError : public std::runtime_error {
public:
  CompileError(CompileFailure kind, std::string circuit, const std::string& detail,
               std::size_t stages_done = 0, std::size_t gates_done = 0)
      : std::runtime_error(std::string(to_string(kind)) + " while compiling '" +
                           circuit + "': " + detail),
        kind_(kind), circuit_(std::move(circuit)), stages_done_(stages_done),
        gates_done_(gates_done) {}

  [[nodiscard]] CompileFailure kind() const { return kind_; }
  [[nodiscard]] const std::string& circuit() const { return circuit_; }
  [[nodiscard]] std::size_t stages_done() const { return stages_done_; }
  [[nodiscard]] std::size_t gates_done() const { return gates_done_; }

private:
  CompileFailure kind_;
  std::string circuit_;
  std::size_t stages_done_;
  std::size_t gates_done_;
};

} // namespace atomplex
