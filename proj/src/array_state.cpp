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

#include "atomplex/array_state.hpp"

#include "atomplex/errors.hpp"

#include <algorithm>
#include <map>

namespace atomplex {

std::size_t ExecutionSequence::stage_count() const {
  std::size_t n = 0;
  for (const auto& c : cycles) {
    if (!c.gate_events.empty()) {
      n = c.index + 1;
    }
  }
  return n;
}

ExecutionSequence decompose_to_cycles(const CompiledSchedule& sched) {
  const std::size_t n = sched.num_qubits;
  if (sched.initial.size() != n) {
    throw DecompositionError("initial layout has " + std::to_string(sched.initial.size()) +
                             " qubits, expected " + std::to_string(n));
  }
  ExecutionSequence seq;
  seq.circuit = sched.circuit;
  seq.num_qubits = n;
  seq.initial = sched.initial;
  seq.strict_exclusivity = sched.strict_exclusivity;
  seq.cycles.resize(sched.stages.size());

  for (std::size_t k = 0; k < sched.stages.size(); ++k) {
    const Layout& before = sched.snapshot(k);
    const Layout& after = sched.stages[k];
    if (after.size() != n) {
      throw DecompositionError("stage " + std::to_string(k) + " layout has wrong size");
    }
    Cycle& cycle = seq.cycles[k];
    cycle.index = k;
    for (QubitId q = 0; q < n; ++q) {
      const QubitState& a = before[q];
      const QubitState& b = after[q];
      if (a.aod && b.aod) {
        if (a.site == b.site && a.col == b.col && a.row == b.row) {
          continue;
        }
        cycle.movements.push_back(Movement{0, k, cycle.movements.size(), q, a.site, b.site,
                                           b.col, b.row});
        continue;
      }
      if (a.site != b.site) {
        throw DecompositionError("qubit " + std::to_string(q) + " of '" + sched.circuit +
                                 "' changes site outside the AOD before stage " +
                                 std::to_string(k));
      }
      if (a.aod != b.aod) {
        cycle.transfers.push_back(Transfer{q, b.aod, b.col, b.row});
      }
    }
  }

  if (sched.gate_stage.size() != sched.gates.size()) {
    throw DecompositionError("gate stage map does not cover every gate");
  }
  for (const Gate& g : sched.gates) {
    const int s = sched.gate_stage[g.id];
    if (s < 0 || static_cast<std::size_t>(s) >= seq.cycles.size()) {
      throw DecompositionError("gate " + std::to_string(g.id) + " has no stage");
    }
    Cycle& cycle = seq.cycles[static_cast<std::size_t>(s)];
    cycle.gate_events.push_back(GateEvent{0, cycle.index, cycle.gate_events.size(), g.id,
                                          sched.stages[static_cast<std::size_t>(s)][g.qubits[0]].site,
                                          g.qubits});
  }
  return seq;
}

std::vector<Layout> replay(const ExecutionSequence& seq) {
  std::vector<Layout> out;
  out.reserve(seq.cycles.size() + 1);
  out.push_back(seq.initial);
  for (const Cycle& c : seq.cycles) {
    Layout next = out.back();
    for (const Transfer& t : c.transfers) {
      QubitState& s = next.at(t.qubit);
      s.aod = t.to_aod;
      s.col = t.to_aod ? t.col : 0;
      s.row = t.to_aod ? t.row : 0;
    }
    for (const Movement& m : c.movements) {
      QubitState& s = next.at(m.qubit);
      s.site = m.to;
      s.col = m.col;
      s.row = m.row;
    }
    out.push_back(std::move(next));
  }
  return out;
}

CompiledSchedule to_schedule(const ExecutionSequence& seq) {
  CompiledSchedule sched;
  sched.circuit = seq.circuit;
  sched.num_qubits = seq.num_qubits;
  sched.strict_exclusivity = seq.strict_exclusivity;
  auto layouts = replay(seq);
  sched.initial = std::move(layouts.front());
  sched.stages.assign(std::make_move_iterator(layouts.begin() + 1),
                      std::make_move_iterator(layouts.end()));
  std::map<GateId, std::pair<std::array<QubitId, 2>, int>> events;
  for (const Cycle& c : seq.cycles) {
    for (const GateEvent& e : c.gate_events) {
      events[e.gate] = {e.operands, static_cast<int>(c.index)};
    }
  }
  // ids are expected dense; gaps become stage -1 and are reported by the validator
  const GateId count = events.empty() ? 0 : events.rbegin()->first + 1;
  sched.gate_stage.assign(count, -1);
  for (GateId id = 0; id < count; ++id) {
    const auto it = events.find(id);
    Gate g;
    g.id = id;
    if (it != events.end()) {
      g.qubits = it->second.first;
      sched.gate_stage[id] = it->second.second;
    }
    sched.gates.push_back(g);
  }
  return sched;
}

namespace {

nlohmann::json site_json(Site s) { return nlohmann::json::array({s.x, s.y}); }

Site site_from(const nlohmann::json& j) { return Site{j.at(0).get<int>(), j.at(1).get<int>()}; }

} // namespace

nlohmann::json to_json(const ExecutionSequence& seq) {
  nlohmann::json initial = nlohmann::json::array();
  for (QubitId q = 0; q < seq.initial.size(); ++q) {
    const QubitState& s = seq.initial[q];
    nlohmann::json e = {{"qubit", q}, {"site", site_json(s.site)}, {"trap", s.aod ? "AOD" : "SLM"}};
    if (s.aod) {
      e["line"] = {s.col, s.row};
    }
    initial.push_back(std::move(e));
  }
  nlohmann::json cycles = nlohmann::json::array();
  for (const Cycle& c : seq.cycles) {
    nlohmann::json moves = nlohmann::json::array();
    for (const Movement& m : c.movements) {
      moves.push_back({{"qubit", m.qubit},
                       {"from", site_json(m.from)},
                       {"to", site_json(m.to)},
                       {"line", {m.col, m.row}}});
    }
    nlohmann::json gates = nlohmann::json::array();
    for (const GateEvent& e : c.gate_events) {
      gates.push_back({{"gate", e.gate}, {"site", site_json(e.site)}, {"ops", e.operands}});
    }
    nlohmann::json transfers = nlohmann::json::array();
    for (const Transfer& t : c.transfers) {
      nlohmann::json e = {{"qubit", t.qubit}, {"to", t.to_aod ? "AOD" : "SLM"}};
      if (t.to_aod) {
        e["line"] = {t.col, t.row};
      }
      transfers.push_back(std::move(e));
    }
    cycles.push_back({{"k", c.index},
                      {"movements", std::move(moves)},
                      {"gates", std::move(gates)},
                      {"transfers", std::move(transfers)}});
  }
  return {{"circuit", seq.circuit},
          {"num_qubits", seq.num_qubits},
          {"strict_exclusivity", seq.strict_exclusivity},
          {"initial", std::move(initial)},
          {"cycles", std::move(cycles)}};
}

ExecutionSequence sequence_from_json(const nlohmann::json& j) {
  ExecutionSequence seq;
  seq.circuit = j.at("circuit").get<std::string>();
  seq.num_qubits = j.at("num_qubits").get<std::size_t>();
  seq.strict_exclusivity = j.value("strict_exclusivity", true);
  seq.initial.resize(seq.num_qubits);
  for (const auto& e : j.at("initial")) {
    QubitState& s = seq.initial.at(e.at("qubit").get<QubitId>());
    s.site = site_from(e.at("site"));
    s.aod = e.at("trap").get<std::string>() == "AOD";
    if (s.aod) {
      s.col = e.at("line").at(0).get<int>();
      s.row = e.at("line").at(1).get<int>();
    }
  }
  for (const auto& jc : j.at("cycles")) {
    Cycle c;
    c.index = jc.at("k").get<std::size_t>();
    for (const auto& m : jc.at("movements")) {
      c.movements.push_back(Movement{0, c.index, c.movements.size(), m.at("qubit").get<QubitId>(),
                                     site_from(m.at("from")), site_from(m.at("to")),
                                     m.at("line").at(0).get<int>(),
                                     m.at("line").at(1).get<int>()});
    }
    for (const auto& g : jc.at("gates")) {
      c.gate_events.push_back(GateEvent{0, c.index, c.gate_events.size(),
                                        g.at("gate").get<GateId>(), site_from(g.at("site")),
                                        g.at("ops").get<std::array<QubitId, 2>>()});
    }
    for (const auto& t : jc.at("transfers")) {
      Transfer tr;
      tr.qubit = t.at("qubit").get<QubitId>();
      tr.to_aod = t.at("to").get<std::string>() == "AOD";
      if (tr.to_aod) {
        tr.col = t.at("line").at(0).get<int>();
        tr.row = t.at("line").at(1).get<int>();
      }
      c.transfers.push_back(tr);
    }
    seq.cycles.push_back(std::move(c));
  }
  return seq;
}

//===----------------------------------------------------------------------===//
// ArrayOccupancy
//===----------------------------------------------------------------------===//

std::size_t ArrayOccupancy::horizon() const {
  std::size_t h = 0;
  for (const auto& s : committed_) {
    h = std::max(h, s.cycles.size());
  }
  return h;
}

std::size_t ArrayOccupancy::stage_count() const {
  std::size_t l = 0;
  for (const auto& s : committed_) {
    l = std::max(l, s.stage_count());
  }
  return l;
}

std::vector<Movement> ArrayOccupancy::movements_at(std::size_t cycle) const {
  std::vector<Movement> out;
  for (const auto& s : committed_) {
    if (cycle < s.cycles.size()) {
      const auto& m = s.cycles[cycle].movements;
      out.insert(out.end(), m.begin(), m.end());
    }
  }
  return out;
}

std::vector<GateEvent> ArrayOccupancy::gate_events_at(std::size_t cycle) const {
  std::vector<GateEvent> out;
  for (const auto& s : committed_) {
    if (cycle < s.cycles.size()) {
      const auto& e = s.cycles[cycle].gate_events;
      out.insert(out.end(), e.begin(), e.end());
    }
  }
  return out;
}

std::vector<AtomRecord> ArrayOccupancy::initial_atoms() const {
  std::vector<AtomRecord> out;
  for (std::size_t i = 0; i < committed_.size(); ++i) {
    const Layout& l = layouts_[i].front();
    for (QubitId q = 0; q < l.size(); ++q) {
      out.push_back(AtomRecord{i, q, l[q]});
    }
  }
  return out;
}

std::vector<AtomRecord> ArrayOccupancy::atoms_at_stage(std::size_t cycle) const {
  std::vector<AtomRecord> out;
  for (std::size_t i = 0; i < committed_.size(); ++i) {
    if (cycle + 1 < layouts_[i].size()) {
      const Layout& l = layouts_[i][cycle + 1];
      for (QubitId q = 0; q < l.size(); ++q) {
        out.push_back(AtomRecord{i, q, l[q]});
      }
    }
  }
  return out;
}

std::set<Site> ArrayOccupancy::static_atoms(std::size_t cycle) const {
  std::set<Site> out;
  for (const auto& a : atoms_at_stage(cycle)) {
    if (!a.state.aod) {
      out.insert(a.state.site);
    }
  }
  return out;
}

ArrayOccupancy commit(ArrayOccupancy occ, ExecutionSequence seq) {
  const std::size_t idx = occ.committed_.size();
  std::set<Site> loaded;
  for (const auto& a : occ.initial_atoms()) {
    loaded.insert(a.state.site);
  }
  for (QubitId q = 0; q < seq.initial.size(); ++q) {
    const Site s = seq.initial[q].site;
    if (!occ.grid_.contains(s)) {
      throw CommitError("qubit " + std::to_string(q) + " of '" + seq.circuit +
                        "' loads outside the grid");
    }
    if (loaded.contains(s)) {
      throw CommitError("qubit " + std::to_string(q) + " of '" + seq.circuit +
                        "' loads onto occupied site (" + std::to_string(s.x) + "," +
                        std::to_string(s.y) + ")");
    }
  }
  for (Cycle& c : seq.cycles) {
    for (Movement& m : c.movements) {
      m.circuit = idx;
    }
    for (GateEvent& e : c.gate_events) {
      e.circuit = idx;
    }
  }
  occ.layouts_.push_back(replay(seq));
  occ.committed_.push_back(std::move(seq));
  return occ;
}

//===----------------------------------------------------------------------===//
// Zones
//===----------------------------------------------------------------------===//

bool ZoneMap::order_free(Site from, Site to) const {
  const auto free_range = [](const std::vector<Band>& bands, int a, int b) {
    for (int v = std::min(a, b); v <= std::max(a, b); ++v) {
      if (v >= 0 && static_cast<std::size_t>(v) < bands.size() &&
          bands[static_cast<std::size_t>(v)].zone == Zone::OrderPreserving) {
        return false;
      }
    }
    return true;
  };
  return free_range(columns, from.x, to.x) && free_range(rows, from.y, to.y);
}

ZoneMap compute_zones(const ArrayOccupancy& occ, std::size_t cycle) {
  ZoneMap zm;
  zm.cycle = cycle;
  zm.columns.resize(static_cast<std::size_t>(occ.grid().x_sites));
  zm.rows.resize(static_cast<std::size_t>(occ.grid().y_sites));
  const auto mark = [](std::vector<Band>& bands, AxisMove m, MovementRef ref) {
    for (int v = std::min(m.from, m.to); v <= std::max(m.from, m.to); ++v) {
      if (v < 0 || static_cast<std::size_t>(v) >= bands.size()) {
        continue;
      }
      Band& b = bands[static_cast<std::size_t>(v)];
      b.zone = Zone::OrderPreserving;
      b.constraints.push_back(ref);
    }
  };
  const auto& seqs = occ.committed();
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (cycle >= seqs[i].cycles.size()) {
      continue;
    }
    const auto& moves = seqs[i].cycles[cycle].movements;
    for (std::size_t p = 0; p < moves.size(); ++p) {
      mark(zm.columns, moves[p].column_motion(), MovementRef{i, p});
      mark(zm.rows, moves[p].row_motion(), MovementRef{i, p});
    }
  }
  return zm;
}

} // namespace atomplex
