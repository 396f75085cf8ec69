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

#include "atomplex/schedule.hpp"

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace atomplex {

/// Motion of one AOD line along its axis during a movement step.
struct AxisMove {
  int from = 0;
  int to = 0;
};

/// An AOD-held qubit displaced during the movement step of cycle `cycle`.
/// Atoms that stay in the AOD without changing site or lines produce no
/// record.
struct Movement {
  std::size_t circuit = 0; ///< sequence index inside an ArrayOccupancy
  std::size_t cycle = 0;
  std::size_t index = 0;
  QubitId qubit = 0;
  Site from;
  Site to;
  int col = 0;
  int row = 0;

  [[nodiscard]] AxisMove column_motion() const { return {from.x, to.x}; }
  [[nodiscard]] AxisMove row_motion() const { return {from.y, to.y}; }
};

struct GateEvent {
  std::size_t circuit = 0;
  std::size_t cycle = 0;
  std::size_t index = 0;
  GateId gate = 0;
  Site site;
  std::array<QubitId, 2> operands{0, 1};
};

/// In-place trap change between the end of the previous stage and this one.
/// Pick-ups carry the AOD lines that take the qubit.
struct Transfer {
  QubitId qubit = 0;
  bool to_aod = false;
  int col = 0;
  int row = 0;
};

/// One Rydberg stage together with the movement step and transfers before
/// it.
struct Cycle {
  std::size_t index = 0;
  std::vector<Movement> movements;
  std::vector<GateEvent> gate_events;
  std::vector<Transfer> transfers;
};

/// Cycle-wise view of one compiled circuit.
struct ExecutionSequence {
  std::string circuit;
  std::size_t num_qubits = 0;
  Layout initial;
  std::vector<Cycle> cycles;
  bool strict_exclusivity = true;

  /// 1 + the last cycle holding a gate event, or 0.
  [[nodiscard]] std::size_t stage_count() const;
};

/// Splits a compiled schedule into cycles. Throws DecompositionError when a
/// qubit changes position without being held by the AOD on both sides of a
/// movement step.
[[nodiscard]] ExecutionSequence decompose_to_cycles(const CompiledSchedule& sched);

/// Replays movements and transfers: element 0 is the initial layout,
/// element k + 1 the layout at stage k.
[[nodiscard]] std::vector<Layout> replay(const ExecutionSequence& seq);

/// Inverse of decompose_to_cycles. Gate labels are not preserved.
[[nodiscard]] CompiledSchedule to_schedule(const ExecutionSequence& seq);

[[nodiscard]] nlohmann::json to_json(const ExecutionSequence& seq);
[[nodiscard]] ExecutionSequence sequence_from_json(const nlohmann::json& j);

//===----------------------------------------------------------------------===//
// Order-preserving movement rules
//===----------------------------------------------------------------------===//

/// A row moving concurrently with `existing` must keep its side of it:
/// starting below ends below, above ends above, level ends level.
[[nodiscard]] constexpr bool row_rule_ok(AxisMove existing, AxisMove candidate) {
  const bool below = candidate.from < existing.from;
  const bool above = candidate.from > existing.from;
  if (below) {
    return candidate.to < existing.to;
  }
  if (above) {
    return candidate.to > existing.to;
  }
  return candidate.to == existing.to;
}

/// Column analogue of row_rule_ok.
[[nodiscard]] constexpr bool col_rule_ok(AxisMove existing, AxisMove candidate) {
  return row_rule_ok(existing, candidate);
}

//===----------------------------------------------------------------------===//
// Occupancy
//===----------------------------------------------------------------------===//

/// A committed atom at some snapshot.
struct AtomRecord {
  std::size_t circuit = 0;
  QubitId qubit = 0;
  QubitState state;
};

/// Compiled circuits already committed to one array. All sequences start at
/// cycle 0; a circuit's atoms are present from loading until its last stage.
class ArrayOccupancy {
public:
  ArrayOccupancy() = default;
  explicit ArrayOccupancy(GridSpec grid) : grid_(grid) {}

  [[nodiscard]] const GridSpec& grid() const { return grid_; }
  [[nodiscard]] const std::vector<ExecutionSequence>& committed() const {
    return committed_;
  }
  [[nodiscard]] bool empty() const { return committed_.empty(); }

  /// Number of cycles covered by any committed sequence.
  [[nodiscard]] std::size_t horizon() const;
  /// Joint Rydberg stage count: the max, not the sum, over sequences.
  [[nodiscard]] std::size_t stage_count() const;

  [[nodiscard]] std::vector<Movement> movements_at(std::size_t cycle) const;
  [[nodiscard]] std::vector<GateEvent> gate_events_at(std::size_t cycle) const;
  [[nodiscard]] std::vector<AtomRecord> initial_atoms() const;
  /// Atoms of every sequence still running at stage `cycle`.
  [[nodiscard]] std::vector<AtomRecord> atoms_at_stage(std::size_t cycle) const;
  /// Sites held by SLM traps at stage `cycle`.
  [[nodiscard]] std::set<Site> static_atoms(std::size_t cycle) const;

  /// Replayed layouts of committed sequence `i` (see replay()).
  [[nodiscard]] const std::vector<Layout>& layouts(std::size_t i) const {
    return layouts_.at(i);
  }

  friend ArrayOccupancy commit(ArrayOccupancy occ, ExecutionSequence seq);

private:
  GridSpec grid_;
  std::vector<ExecutionSequence> committed_;
  std::vector<std::vector<Layout>> layouts_;
};

/// Appends `seq`, renumbering its records with the new sequence index.
/// Throws CommitError if an atom of `seq` loads onto a site already used by
/// a committed atom, or leaves the grid.
[[nodiscard]] ArrayOccupancy commit(ArrayOccupancy occ, ExecutionSequence seq);

//===----------------------------------------------------------------------===//
// Zones
//===----------------------------------------------------------------------===//

enum class Zone { OrderFree, OrderPreserving };

struct MovementRef {
  std::size_t sequence = 0;
  std::size_t movement = 0;

  bool operator==(const MovementRef&) const = default;
};

struct Band {
  Zone zone = Zone::OrderFree;
  std::vector<MovementRef> constraints;
};

/// Per-cycle classification of site columns and rows. A band is
/// order-preserving when a committed AOD line sweeps over or rests on it
/// during the cycle's movement step. Every carried qubit constrains both
/// axes, so diagonal moves mark a column and a row range.
struct ZoneMap {
  std::size_t cycle = 0;
  std::vector<Band> columns;
  std::vector<Band> rows;

  /// True when the box spanned by `from` and `to` touches no
  /// order-preserving column or row. Such a move passes the movement rules
  /// against every committed line of the cycle.
  [[nodiscard]] bool order_free(Site from, Site to) const;
};

[[nodiscard]] ZoneMap compute_zones(const ArrayOccupancy& occ, std::size_t cycle);

} // namespace atomplex
