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

#include "atomplex/smt/expr.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace atomplex::smt {

enum class CheckResult { Sat, Unsat, Unknown };

[[nodiscard]] inline const char* to_string(CheckResult r) {
  switch (r) {
  case CheckResult::Sat:
    return "sat";
  case CheckResult::Unsat:
    return "unsat";
  case CheckResult::Unknown:
    return "unknown";
  }
  return "?";
}

/// A bounded integer variable, lo <= v <= hi. Booleans use [0, 1].
struct VarDecl {
  std::string name;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// Values of the declared variables after a satisfiable check.
class Model {
public:
  Model() = default;
  explicit Model(std::vector<std::optional<std::int64_t>> values)
      : values_(std::move(values)) {}

  /// Throws ExtractionError when `v` has no value.
  [[nodiscard]] std::int64_t operator[](VarId v) const;
  [[nodiscard]] bool has(VarId v) const {
    return v < values_.size() && values_[v].has_value();
  }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

private:
  std::vector<std::optional<std::int64_t>> values_;
};

/// Incremental solver over bounded integer variables.
///
/// Variables must be declared densely from id 0 before they are used in an
/// assertion. push() opens a scope; pop() discards every assertion added
/// since the matching push(). Declarations are never popped.
class Backend {
public:
  virtual ~Backend() = default;

  virtual void declare(VarId id, const VarDecl& decl) = 0;
  virtual void add(const Expr& assertion) = 0;
  virtual void push() = 0;
  virtual void pop() = 0;
  /// `timeout_ms` <= 0 means no limit.
  virtual CheckResult check(std::int64_t timeout_ms) = 0;
  /// Model of the last Sat check. Throws ExtractionError otherwise.
  [[nodiscard]] virtual Model model() const = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

enum class BackendKind { Z3, Enumeration };

[[nodiscard]] std::unique_ptr<Backend> make_z3_backend(unsigned seed = 0);

/// Depth-first search over the full assignment space. Only usable on tiny
/// instances; `node_limit` bounds the number of partial assignments visited
/// per check (0 = unbounded), after which the check reports Unknown.
[[nodiscard]] std::unique_ptr<Backend> make_enumeration_backend(std::uint64_t node_limit = 0);

[[nodiscard]] std::unique_ptr<Backend> make_backend(BackendKind kind, unsigned seed = 0);

/// Calls `visit` for every satisfying assignment of `assertions` over `vars`
/// until it returns false. Values are indexed by VarId.
void for_each_model(const std::vector<VarDecl>& vars, const std::vector<Expr>& assertions,
                    const std::function<bool(const std::vector<std::int64_t>&)>& visit);

} // namespace atomplex::smt
