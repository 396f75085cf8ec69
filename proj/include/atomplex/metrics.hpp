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

#include "atomplex/compiler.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace atomplex {

//===----------------------------------------------------------------------===//
// Baselines
//===----------------------------------------------------------------------===//

/// Circuits compiled one after another, each on an empty array.
struct SequentialResult {
  std::vector<CompiledSchedule> schedules;
  std::size_t total_stages = 0; ///< sum of per-circuit stage counts
  double total_seconds = 0.0;   ///< sum of per-circuit solve times
  std::optional<CompileError> failure;

  [[nodiscard]] bool ok() const { return !failure.has_value(); }
};

/// Stops at the first failing circuit; the totals then cover the circuits
/// compiled before it plus the time spent on it.
[[nodiscard]] SequentialResult compile_sequential(const std::vector<Circuit>& circuits,
                                                  const GridSpec& grid, Seconds budget,
                                                  const CompilerOptions& opts = {});

/// Concatenates circuits into one, shifting the qubits of circuit m by the
/// qubit counts of circuits 0..m-1. Throws std::invalid_argument on an empty
/// list.
[[nodiscard]] Circuit merge_circuits(const std::vector<Circuit>& circuits);

struct MergedResult {
  std::optional<CompiledSchedule> schedule;
  std::size_t stages = 0;
  double seconds = 0.0;
  std::optional<CompileError> failure;

  [[nodiscard]] bool ok() const { return !failure.has_value(); }
};

[[nodiscard]] MergedResult compile_merged(const std::vector<Circuit>& circuits,
                                          const GridSpec& grid, Seconds budget,
                                          const CompilerOptions& opts = {});

//===----------------------------------------------------------------------===//
// Metrics
//===----------------------------------------------------------------------===//

/// Stage reduction in percent: 100 (L - L_baseline) / L_baseline. Throws
/// MetricError when L_baseline is 0.
[[nodiscard]] double rpr(double l_dynamo, double l_baseline);

/// Compile-time speedup T_baseline / T_dynamo. Throws MetricError when
/// T_dynamo is 0.
[[nodiscard]] double speedup(double t_dynamo, double t_baseline);

/// The reciprocal form T_dynamo / T_baseline.
[[nodiscard]] double speedup_literal(double t_dynamo, double t_baseline);

struct DeltaRow {
  std::string circuit;
  std::size_t delta_stages = 0;
  double delta_seconds = 0.0;
  bool ok = true;
};

/// Per-circuit increase of the array's joint stage count, in compile order.
[[nodiscard]] std::vector<DeltaRow> delta_stage_accounting(const ArrayCompileResult& run);

/// Differences of a non-decreasing sequence of joint stage counts.
[[nodiscard]] std::vector<std::size_t> deltas(const std::vector<std::size_t>& joint_counts);

enum class BaselineKind { Sequential, Merged };

[[nodiscard]] const char* to_string(BaselineKind k);

struct MetricRow {
  std::string workload;
  BaselineKind baseline = BaselineKind::Sequential;
  std::size_t l_dynamo = 0;
  std::size_t l_baseline = 0;
  double t_dynamo = 0.0;
  double t_baseline = 0.0;
  double rpr = 0.0;
  double speedup = 0.0;

  /// Fills rpr and speedup from the stage counts and times.
  [[nodiscard]] static MetricRow make(std::string workload, BaselineKind kind,
                                      std::size_t l_dynamo, std::size_t l_baseline,
                                      double t_dynamo, double t_baseline);
};

[[nodiscard]] std::string metric_csv_header();
[[nodiscard]] std::string to_csv(const MetricRow& row);

/// Fixed-point formatting used by every report.
[[nodiscard]] std::string format_fixed(double v, int digits = 2);

} // namespace atomplex
