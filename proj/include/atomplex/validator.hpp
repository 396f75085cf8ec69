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
#include "atomplex/schedule.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace atomplex {

enum class ViolationKind {
  GateNotColocated,
  ExclusivityBreach,
  AODCrossing,
  SLMDrift,
  DependencyOrder,
  CrossCircuitMovement,
  CrossCircuitGateSite,
  OutOfBounds,
};
inline constexpr std::size_t kViolationKindCount = 8;

[[nodiscard]] const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind = ViolationKind::OutOfBounds;
  /// Stage of the offending layout, or the cycle of a movement step. Absent
  /// for the loading layout and for stage-independent checks.
  std::optional<std::size_t> stage;
  /// Qubits and gates involved, as "c<circuit>.q<id>" / "c<circuit>.g<id>".
  std::vector<std::string> entities;
  std::string detail;
};

struct ViolationReport {
  std::vector<Violation> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] std::size_t count(ViolationKind k) const;
  /// One JSON object per line.
  [[nodiscard]] std::string to_json_lines() const;
};

[[nodiscard]] nlohmann::json to_json(const Violation& v);

/// Checks one compiled circuit against every single-circuit constraint:
/// bounds, co-location of gate operands, site exclusivity, AOD line order
/// and persistence, SLM immobility and gate dependencies. Reports every
/// violation found.
[[nodiscard]] ViolationReport validate_single(const CompiledSchedule& sched,
                                              const GridSpec& grid);

/// validate_single on every committed circuit plus the cross-circuit
/// checks: distinct loading sites, order preservation between each movement
/// of a circuit and the AOD-held atoms of every later circuit, and gate-site
/// exclusivity. The exclusivity rule for a pair of circuits is
/// the one the later of the two was compiled with.
[[nodiscard]] ViolationReport validate_joint(const ArrayOccupancy& occ);

[[nodiscard]] inline std::size_t stage_count(const CompiledSchedule& sched) {
  return sched.stage_count();
}
[[nodiscard]] inline std::size_t stage_count(const ArrayOccupancy& occ) {
  return occ.stage_count();
}

} // namespace atomplex
