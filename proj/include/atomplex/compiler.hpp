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

#include "atomplex/array_state.hpp"
#include "atomplex/circuit.hpp"
#include "atomplex/errors.hpp"
#include "atomplex/schedule.hpp"
#include "atomplex/smt/backend.hpp"
#include "atomplex/smt/expr.hpp"

#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace atomplex {

struct CompilerOptions {
  /// Stages encoded per greedy step.
  std::size_t window = 2;
  /// Keep every new atom off committed gate sites and every new gate off
  /// committed atoms. When false only the gate operands are kept off
  /// committed gate sites.
  bool strict_exclusivity = true;
  /// Gates may not run before this stage; earlier stages stay idle.
  std::size_t start_stage = 0;
  unsigned seed = 0;
  smt::BackendKind backend = smt::BackendKind::Z3;
};

using Seconds = std::chrono::duration<double>;

//===----------------------------------------------------------------------===//
// Encoding
//===----------------------------------------------------------------------===//

enum class Family {
  Bounds,
  Trap,
  AodOrder,
  GateExecution,
  Exclusivity,
  Dependency,
  MultiprogramMovement,
  MultiprogramGates,
};
inline constexpr std::size_t kFamilyCount = 8;

[[nodiscard]] const char* to_string(Family f);

/// Solver variables of one encoded window.
///
/// Snapshot 0 is the layout before the window's first stage and snapshot
/// s + 1 the layout at window stage s. When the window continues an earlier
/// partial schedule, snapshot 0 is fixed and its accessors return constants.
class VariableSet {
public:
  struct QubitVars {
    smt::Expr x, y, a, c, r;
  };

  VariableSet() = default;
  VariableSet(const GridSpec& grid, std::size_t num_qubits, std::size_t snapshots,
              const std::optional<Layout>& fixed_start);

  /// Declares gate stage variables t in [lo, hi] and the scheduled flag.
  void add_gate(GateId g, std::int64_t lo, std::int64_t hi);

  [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
  [[nodiscard]] std::size_t snapshots() const { return snapshots_; }
  [[nodiscard]] const QubitVars& at(QubitId q, std::size_t snapshot) const {
    return qubits_[snapshot * num_qubits_ + q];
  }
  [[nodiscard]] bool has_gate(GateId g) const {
    return g < stage_.size() && stage_[g].valid();
  }
  [[nodiscard]] const smt::Expr& stage(GateId g) const { return stage_.at(g); }
  [[nodiscard]] const smt::Expr& scheduled(GateId g) const { return scheduled_.at(g); }

  [[nodiscard]] const std::vector<smt::VarDecl>& decls() const { return decls_; }

private:
  smt::Expr declare(std::string name, std::int64_t lo, std::int64_t hi);

  std::size_t num_qubits_ = 0;
  std::size_t snapshots_ = 0;
  std::vector<QubitVars> qubits_;
  std::vector<smt::Expr> stage_;
  std::vector<smt::Expr> scheduled_;
  std::vector<smt::VarDecl> decls_;
};

/// Which part of the schedule a problem covers.
struct WindowSpec {
  std::size_t first_stage = 0;
  std::size_t stages = 1;
  /// Layout before `first_stage`; absent means the loading layout is free.
  std::optional<Layout> prior;
  /// Gates to encode, by id; empty means all. Dependencies on gates left
  /// out count as satisfied.
  std::vector<bool> active;
  /// Gates may only use the first `gate_stages` stages; 0 means all. The
  /// remaining stages only check that the layout can continue.
  std::size_t gate_stages = 0;
  /// Force every encoded gate into the window.
  bool require_all = true;
  /// Earliest stage any gate may use.
  std::size_t min_gate_stage = 0;
};

struct EncodedProblem {
  Circuit circuit;
  GridSpec grid;
  WindowSpec window;
  bool strict_exclusivity = true;
  VariableSet vars;
  std::array<std::vector<smt::Expr>, kFamilyCount> families;

  [[nodiscard]] std::vector<smt::Expr>& family(Family f) {
    return families[static_cast<std::size_t>(f)];
  }
  [[nodiscard]] const std::vector<smt::Expr>& family(Family f) const {
    return families[static_cast<std::size_t>(f)];
  }
  [[nodiscard]] std::vector<smt::Expr> assertions() const;
};

/// Single-circuit constraints for one window.
[[nodiscard]] EncodedProblem encode_window(const Circuit& c, const GridSpec& grid,
                                           const WindowSpec& window,
                                           bool strict_exclusivity = true);

/// Whole-circuit problem: every gate within `horizon` stages from a free
/// loading layout.
[[nodiscard]] EncodedProblem encode_base(const Circuit& c, const GridSpec& grid,
                                         std::size_t horizon,
                                         bool strict_exclusivity = true);

/// Adds the constraints that keep the problem consistent with the circuits
/// already committed to `occ`. Window stage s aligns with occupancy cycle
/// first_stage + s; cycles past the occupancy add nothing.
[[nodiscard]] EncodedProblem encode_multiprogram(EncodedProblem p, const ArrayOccupancy& occ);

/// Declares the variables and asserts every family.
void load(const EncodedProblem& p, smt::Backend& backend);

/// Reads a schedule out of a model of `p`. Gates left unscheduled get stage
/// -1. Stages after the last gate are dropped when `trim` is set. Throws
/// ExtractionError when the model misses a variable.
[[nodiscard]] CompiledSchedule extract_schedule(const smt::Model& model,
                                                const EncodedProblem& p, bool trim = true);

//===----------------------------------------------------------------------===//
// Solving
//===----------------------------------------------------------------------===//

/// Greedy windowed compilation of `c` against the committed circuits of
/// `occ`. Each step encodes `opts.window` stages, forces the first ready gate
/// that can run into the current stage, maximizes the number of gates placed
/// in the window by iterative deepening and keeps the current stage only.
///
/// Throws CompileError: Timeout when `budget` runs out, GridTooSmall when the
/// circuit cannot be loaded, Infeasible when the committed circuits block
/// all progress.
[[nodiscard]] CompiledSchedule solve_window(const Circuit& c, const GridSpec& grid,
                                            const ArrayOccupancy& occ, Seconds budget,
                                            const CompilerOptions& opts = {});

struct CircuitOutcome {
  std::string circuit;
  std::optional<CompileFailure> failure;
  std::string detail;
  double seconds = 0.0;
  std::size_t stages = 0;       ///< own stage count when compiled
  std::size_t joint_before = 0; ///< array stage count before this circuit
  std::size_t joint_after = 0;  ///< and after

  [[nodiscard]] bool ok() const { return !failure.has_value(); }
  [[nodiscard]] std::size_t delta_stages() const { return joint_after - joint_before; }
};

struct ArrayCompileResult {
  std::vector<CompiledSchedule> schedules; ///< successful circuits, in order
  ArrayOccupancy occupancy;
  std::vector<CircuitOutcome> outcomes;    ///< one per attempted circuit

  [[nodiscard]] bool ok() const;
  /// Rethrows the first failure as CompileError.
  void throw_if_failed() const;
};

/// Compiles `circuits` in order onto one array, committing each result
/// before the next. Each circuit gets the full `budget`. Stops at the first
/// failure unless `keep_going` is set, in which case failed circuits are
/// skipped.
[[nodiscard]] ArrayCompileResult compile_on_array(const std::vector<Circuit>& circuits,
                                                  const GridSpec& grid, Seconds budget,
                                                  const CompilerOptions& opts = {},
                                                  bool keep_going = false);

} // namespace atomplex
