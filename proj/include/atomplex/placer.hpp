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

#include <cstddef>
#include <utility>
#include <vector>

#include <json.hpp>

namespace atomplex {

/// Circuits to distribute over `num_arrays` arrays, each able to run at most
/// `capacity` gates per layer-sized timestep.
struct PlacementRequest {
  std::vector<LayeredCircuit> circuits;
  std::size_t num_arrays = 1;
  std::size_t capacity = 1;
};

/// One circuit placed on an array.
struct Assignment {
  std::size_t circuit = 0;        ///< index into PlacementRequest::circuits
  std::size_t start = 0;          ///< start timestep
  std::size_t length = 0;         ///< layer count
  std::size_t feasible_start = 0; ///< earliest start recorded at assignment
};

/// Width usage of one array over time, plus the circuits placed on it.
class ArrayTimeline {
public:
  [[nodiscard]] std::size_t occupancy_at(std::size_t t) const {
    return t < occupancy_.size() ? occupancy_[t] : 0;
  }
  [[nodiscard]] const std::vector<std::size_t>& occupancy() const {
    return occupancy_;
  }
  [[nodiscard]] const std::vector<Assignment>& assigned() const {
    return assigned_;
  }
  /// Last occupied timestep + 1.
  [[nodiscard]] std::size_t span() const { return occupancy_.size(); }

  /// Adds `widths` starting at `a.start` and records the assignment. Does
  /// not check capacity.
  void add(const Assignment& a, const std::vector<std::size_t>& widths);

  /// Raw occupancy, for tests and for building synthetic timelines.
  void set_occupancy(std::vector<std::size_t> occ) { occupancy_ = std::move(occ); }

private:
  std::vector<std::size_t> occupancy_;
  std::vector<Assignment> assigned_;
};

struct ArraySlot {
  std::size_t array = 0;
  std::size_t start = 0;
};

struct Placement {
  std::vector<ArraySlot> slots;          ///< indexed by circuit
  std::vector<ArrayTimeline> timelines;  ///< indexed by array; assigned() is the execution order

  /// Circuit indices on `array` in execution order.
  [[nodiscard]] std::vector<std::size_t> order(std::size_t array) const;
};

/// Sorts circuit indices by (length, input index).
[[nodiscard]] std::vector<std::size_t> sort_by_length(const PlacementRequest& req);

/// Step 1: the min(M, N) shortest circuits start at t = 0, one per array in
/// array-index order. Returns the partial placement and the remaining circuit
/// indices, still sorted by length.
[[nodiscard]] std::pair<Placement, std::vector<std::size_t>>
initial_allocation(const PlacementRequest& req);

/// Smallest t with occupancy[t + k] + width[k] <= capacity for every layer k.
[[nodiscard]] std::size_t earliest_feasible_start(const ArrayTimeline& tl,
                                                  const LayeredCircuit& lc,
                                                  std::size_t capacity);

[[nodiscard]] inline std::size_t placement_cost(std::size_t start,
                                                const LayeredCircuit& lc) {
  return start + lc.length();
}

/// Step 2: assigns each remaining circuit to the array with the smallest
/// placement cost; ties go to the lower array index. Throws
/// UnplaceableError for a circuit wider than the capacity.
[[nodiscard]] Placement incremental_place(Placement partial,
                                          const std::vector<std::size_t>& remaining,
                                          const PlacementRequest& req);

/// Step 3: reorders the circuits of one array by (recorded feasible start,
/// length) and rebuilds the timeline by re-inserting them in that order.
[[nodiscard]] ArrayTimeline refine_intra_array(const ArrayTimeline& tl,
                                               const PlacementRequest& req);

/// Steps 1-3.
[[nodiscard]] Placement schedule_all(const PlacementRequest& req);

[[nodiscard]] nlohmann::json to_json(const Placement& p, const PlacementRequest& req);

} // namespace atomplex
