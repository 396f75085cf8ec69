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

// Hand-built schedules: a clean one, and for every violation kind a copy
// corrupted so that it breaks that rule.

#include "atomplex/array_state.hpp"
#include "atomplex/validator.hpp"

#include <utility>
#include <vector>

namespace atomplex::fixtures {

inline QubitState slm(int x, int y) { return QubitState{Site{x, y}, false, 0, 0}; }
inline QubitState aod(int x, int y, int c, int r) { return QubitState{Site{x, y}, true, c, r}; }

inline GridSpec grid() { return GridSpec::square(3, 3); }

/// Three qubits, g0(0,1) at stage 0 on (1,0), g1(1,2) at stage 1 on (1,0).
inline CompiledSchedule clean_single() {
  CompiledSchedule s;
  s.circuit = "a";
  s.num_qubits = 3;
  s.gates = {Gate{0, {0, 1}, "cz"}, Gate{1, {1, 2}, "cz"}};
  s.initial = {aod(0, 0, 0, 0), slm(1, 0), aod(2, 1, 2, 1)};
  s.stages = {{aod(1, 0, 0, 0), slm(1, 0), aod(2, 1, 2, 1)},
              {aod(0, 0, 0, 0), slm(1, 0), aod(1, 0, 2, 1)}};
  s.gate_stage = {0, 1};
  return s;
}

/// Two qubits, one gate at stage 0 on (1,2), carried along the same
/// column motion as qubit 0 of clean_single().
inline CompiledSchedule clean_partner() {
  CompiledSchedule s;
  s.circuit = "b";
  s.num_qubits = 2;
  s.gates = {Gate{0, {0, 1}, "cz"}};
  s.initial = {aod(0, 2, 0, 2), slm(1, 2)};
  s.stages = {{aod(1, 2, 0, 2), slm(1, 2)}};
  s.gate_stage = {0};
  return s;
}

inline ArrayOccupancy occupancy_of(const std::vector<CompiledSchedule>& ss) {
  ArrayOccupancy occ(grid());
  for (const auto& s : ss) {
    occ = commit(occ, decompose_to_cycles(s));
  }
  return occ;
}

inline ArrayOccupancy clean_joint() { return occupancy_of({clean_single(), clean_partner()}); }

/// A single-circuit corruption aimed at `kind`.
inline CompiledSchedule corrupt_single(ViolationKind kind) {
  CompiledSchedule s = clean_single();
  switch (kind) {
  case ViolationKind::GateNotColocated:
    s.stages[0][0] = aod(0, 0, 0, 0);
    break;
  case ViolationKind::ExclusivityBreach:
    s.stages[1][0] = aod(1, 0, 0, 0);
    s.stages[0][0] = aod(1, 0, 0, 0);
    break;
  case ViolationKind::AODCrossing:
    s.stages[0][2] = aod(0, 1, 2, 1);
    break;
  case ViolationKind::SLMDrift:
    s.initial[1] = slm(2, 2);
    break;
  case ViolationKind::DependencyOrder:
    s.gate_stage[1] = 0;
    break;
  case ViolationKind::OutOfBounds:
    s.initial[2] = aod(3, 1, 2, 1);
    break;
  default:
    break;
  }
  return s;
}

/// A two-circuit occupancy corrupted to produce `kind`.
inline ArrayOccupancy corrupt_joint(ViolationKind kind) {
  CompiledSchedule b = clean_partner();
  switch (kind) {
  case ViolationKind::CrossCircuitMovement:
    // column 0 -> 2 while the other circuit's column 0 -> 1
    b.initial = {aod(0, 2, 0, 2), slm(2, 2)};
    b.stages = {{aod(2, 2, 0, 2), slm(2, 2)}};
    break;
  case ViolationKind::CrossCircuitGateSite:
    // both circuits run a gate on (1,0) in stage 0
    b.strict_exclusivity = false;
    b.initial = {aod(0, 1, 0, 1), aod(0, 2, 0, 2)};
    b.stages = {{aod(1, 0, 0, 1), aod(1, 0, 0, 2)}};
    break;
  default:
    return occupancy_of({corrupt_single(kind), clean_partner()});
  }
  return occupancy_of({clean_single(), b});
}

inline ViolationReport corrupted_report(ViolationKind kind) {
  if (kind == ViolationKind::CrossCircuitMovement ||
      kind == ViolationKind::CrossCircuitGateSite) {
    return validate_joint(corrupt_joint(kind));
  }
  return validate_single(corrupt_single(kind), grid());
}

} // namespace atomplex::fixtures
