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

#include "atomplex/placer.hpp"

#include "atomplex/errors.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace atomplex {

void ArrayTimeline::add(const Assignment& a, const std::vector<std::size_t>& widths) {
  if (occupancy_.size() < a.start + widths.size()) {
    occupancy_.resize(a.start + widths.size(), 0);
  }
  for (std::size_t k = 0; k < widths.size(); ++k) {
    occupancy_[a.start + k] += widths[k];
  }
  assigned_.push_back(a);
}

std::vector<std::size_t> Placement::order(std::size_t array) const {
  std::vector<std::size_t> out;
  for (const auto& a : timelines.at(array).assigned()) {
    out.push_back(a.circuit);
  }
  return out;
}

std::vector<std::size_t> sort_by_length(const PlacementRequest& req) {
  std::vector<std::size_t> idx(req.circuits.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return req.circuits[a].length() < req.circuits[b].length();
  });
  return idx;
}

namespace {

void check_width(const LayeredCircuit& lc, std::size_t capacity) {
  if (lc.max_width() > capacity) {
    throw UnplaceableError(lc.name());
  }
}

} // namespace

std::pair<Placement, std::vector<std::size_t>>
initial_allocation(const PlacementRequest& req) {
  Placement p;
  p.slots.resize(req.circuits.size());
  p.timelines.resize(req.num_arrays);
  const auto sorted = sort_by_length(req);
  const std::size_t seeded = std::min(sorted.size(), req.num_arrays);
  for (std::size_t j = 0; j < seeded; ++j) {
    const std::size_t ci = sorted[j];
    const LayeredCircuit& lc = req.circuits[ci];
    p.timelines[j].add(Assignment{ci, 0, lc.length(), 0}, lc.width_profile());
    p.slots[ci] = ArraySlot{j, 0};
  }
  return {std::move(p),
          std::vector<std::size_t>(sorted.begin() + static_cast<std::ptrdiff_t>(seeded),
                                   sorted.end())};
}

std::size_t earliest_feasible_start(const ArrayTimeline& tl, const LayeredCircuit& lc,
                                    std::size_t capacity) {
  const auto widths = lc.width_profile();
  // Past the end of the timeline every slot is empty, so t = span() always fits.
  for (std::size_t t = 0;; ++t) {
    bool fits = true;
    for (std::size_t k = 0; k < widths.size() && fits; ++k) {
      fits = tl.occupancy_at(t + k) + widths[k] <= capacity;
    }
    if (fits) {
      return t;
    }
  }
}

Placement incremental_place(Placement partial, const std::vector<std::size_t>& remaining,
                            const PlacementRequest& req) {
  for (const std::size_t ci : remaining) {
    const LayeredCircuit& lc = req.circuits[ci];
    check_width(lc, req.capacity);
    std::size_t best_array = 0;
    std::size_t best_start = 0;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < partial.timelines.size(); ++j) {
      const std::size_t t = earliest_feasible_start(partial.timelines[j], lc, req.capacity);
      const std::size_t cost = placement_cost(t, lc);
      if (j == 0 || cost < best_cost) {
        best_array = j;
        best_start = t;
        best_cost = cost;
      }
    }
    partial.timelines[best_array].add(Assignment{ci, best_start, lc.length(), best_start},
                                      lc.width_profile());
    partial.slots[ci] = ArraySlot{best_array, best_start};
  }
  return partial;
}

ArrayTimeline refine_intra_array(const ArrayTimeline& tl, const PlacementRequest& req) {
  std::vector<Assignment> order = tl.assigned();
  std::stable_sort(order.begin(), order.end(), [](const Assignment& a, const Assignment& b) {
    return std::tie(a.feasible_start, a.length) < std::tie(b.feasible_start, b.length);
  });
  ArrayTimeline rebuilt;
  for (Assignment a : order) {
    const LayeredCircuit& lc = req.circuits[a.circuit];
    a.start = earliest_feasible_start(rebuilt, lc, req.capacity);
    rebuilt.add(a, lc.width_profile());
  }
  return rebuilt;
}

Placement schedule_all(const PlacementRequest& req) {
  if (req.num_arrays == 0) {
    throw std::invalid_argument("placement needs at least one array");
  }
  if (req.capacity == 0) {
    throw std::invalid_argument("array capacity must be positive");
  }
  for (const auto& lc : req.circuits) {
    check_width(lc, req.capacity);
  }
  auto [partial, remaining] = initial_allocation(req);
  Placement p = incremental_place(std::move(partial), remaining, req);
  for (std::size_t j = 0; j < p.timelines.size(); ++j) {
    p.timelines[j] = refine_intra_array(p.timelines[j], req);
    for (const auto& a : p.timelines[j].assigned()) {
      p.slots[a.circuit] = ArraySlot{j, a.start};
    }
  }
  return p;
}

nlohmann::json to_json(const Placement& p, const PlacementRequest& req) {
  nlohmann::json arrays = nlohmann::json::array();
  for (std::size_t j = 0; j < p.timelines.size(); ++j) {
    nlohmann::json circuits = nlohmann::json::array();
    for (const auto& a : p.timelines[j].assigned()) {
      circuits.push_back({{"name", req.circuits[a.circuit].name()},
                          {"start", a.start},
                          {"length", a.length}});
    }
    arrays.push_back({{"index", j}, {"circuits", std::move(circuits)}});
  }
  return {{"arrays", std::move(arrays)}};
}

} // namespace atomplex
