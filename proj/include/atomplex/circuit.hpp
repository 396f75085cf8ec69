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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace atomplex {

using QubitId = std::uint32_t;
using GateId = std::uint32_t;

/// A two-qubit interaction. Single-qubit operations are not modeled.
struct Gate {
  GateId id = 0;
  std::array<QubitId, 2> qubits{0, 1};
  std::string label = "cz";

  [[nodiscard]] bool acts_on(QubitId q) const {
    return qubits[0] == q || qubits[1] == q;
  }
  [[nodiscard]] bool shares_qubit(const Gate& other) const {
    return acts_on(other.qubits[0]) || acts_on(other.qubits[1]);
  }
};

/// Ordered two-qubit gate list over `num_qubits` logical qubits.
/// Gate ids are dense, 0..G-1, in program order.
class Circuit {
public:
  Circuit() = default;
  Circuit(std::string name, std::size_t num_qubits)
      : name_(std::move(name)), num_qubits_(num_qubits) {}

  /// Appends a gate; throws std::invalid_argument on equal or
  /// out-of-range operands.
  GateId add_gate(QubitId q0, QubitId q1, std::string label = "cz");

  [[nodiscard]] const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] std::size_t num_gates() const { return gates_.size(); }

private:
  std::string name_;
  std::size_t num_qubits_ = 0;
  std::vector<Gate> gates_;
};

/// ASAP layering of a circuit's dependency DAG.
struct LayeredCircuit {
  Circuit circuit;
  std::vector<std::vector<GateId>> layers;
  std::vector<std::size_t> layer_of; ///< indexed by gate id

  [[nodiscard]] const std::string& name() const { return circuit.name(); }
  [[nodiscard]] std::size_t length() const { return layers.size(); }
  [[nodiscard]] std::vector<std::size_t> width_profile() const;
  [[nodiscard]] std::size_t max_width() const;
};

struct CircuitShape {
  std::size_t length = 0;
  std::vector<std::size_t> width_profile;

  bool operator==(const CircuitShape&) const = default;
};

enum class CircuitFormat { QasmSubset, JsonGateList };

/// Parses a circuit. Only `cx`/`cz` statements produce gates; single-qubit
/// gates are dropped silently. Any other statement is skipped and, when
/// `warnings` is non-null, reported there. Throws ParseError.
[[nodiscard]] Circuit parse_circuit(std::string_view text, CircuitFormat format,
                                    std::vector<std::string>* warnings = nullptr);

/// Reads a `.qasm` or `.json` file; the circuit name defaults to the stem.
[[nodiscard]] Circuit load_circuit(const std::filesystem::path& path,
                                   std::vector<std::string>* warnings = nullptr);

/// Places each gate one layer after the latest earlier gate sharing a qubit.
[[nodiscard]] LayeredCircuit layer_dag(const Circuit& c);

[[nodiscard]] CircuitShape shape(const LayeredCircuit& lc);

/// Longest chain of gates that pairwise share a qubit in program order.
[[nodiscard]] inline std::size_t dag_depth(const Circuit& c) {
  return layer_dag(c).length();
}

} // namespace atomplex
