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

#include "atomplex/circuit.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace atomplex {

/// Discrete interaction-site coordinates.
struct Site {
  int x = 0;
  int y = 0;

  auto operator<=>(const Site&) const = default;
};

/// Array geometry: a grid of interaction sites plus the number of movable
/// AOD rows and columns.
struct GridSpec {
  int x_sites = 1;
  int y_sites = 1;
  int aod_rows = 1;
  int aod_cols = 1;

  /// Square-ish grid with one AOD line per site row/column.
  static GridSpec square(int x, int y) { return GridSpec{x, y, y, x}; }

  /// Parses `XxY` or `XxY:RxC` (R AOD rows, C AOD columns). Without the
  /// suffix the AOD has one line per site row and column.
  static GridSpec parse(std::string_view text);

  [[nodiscard]] int site_count() const { return x_sites * y_sites; }
  [[nodiscard]] bool contains(Site s) const {
    return s.x >= 0 && s.y >= 0 && s.x < x_sites && s.y < y_sites;
  }
  [[nodiscard]] std::string to_string() const;

  bool operator==(const GridSpec&) const = default;
};

/// Position and trap of one qubit. `col`/`row` name the AOD lines holding
/// the qubit and are meaningful only while `aod` is set.
struct QubitState {
  Site site;
  bool aod = false;
  int col = 0;
  int row = 0;

  bool operator==(const QubitState&) const = default;
};

/// One QubitState per qubit.
using Layout = std::vector<QubitState>;

/// A compiled circuit: the loading layout, the layout at every Rydberg
/// stage, and the stage of every gate.
///
/// Stage k is preceded by an AOD movement step that takes the layout of
/// stage k-1 (the initial layout for k = 0) to the layout of stage k. A
/// qubit may only change position when it sits in the AOD at both ends of
/// that step; trap changes happen in place.
struct CompiledSchedule {
  std::string circuit;
  std::size_t num_qubits = 0;
  std::vector<Gate> gates;
  Layout initial;
  std::vector<Layout> stages;
  std::vector<int> gate_stage; ///< indexed by gate id
  /// Compiled with exclusion of every foreign atom from gate sites (rather
  /// than only the gate operands).
  bool strict_exclusivity = true;
  double solve_seconds = 0.0;

  /// 1 + the latest gate stage, or 0 without gates.
  [[nodiscard]] std::size_t stage_count() const;

  /// Layout after `snapshot` movement steps: 0 is the initial layout,
  /// k + 1 is stage k. Valid for 0..stages.size().
  [[nodiscard]] const Layout& snapshot(std::size_t snapshot) const;
};

} // namespace atomplex
