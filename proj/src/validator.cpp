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

#include "atomplex/validator.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace atomplex {

const char* to_string(ViolationKind k) {
  switch (k) {
  case ViolationKind::GateNotColocated:
    return "GateNotColocated";
  case ViolationKind::ExclusivityBreach:
    return "ExclusivityBreach";
  case ViolationKind::AODCrossing:
    return "AODCrossing";
  case ViolationKind::SLMDrift:
    return "SLMDrift";
  case ViolationKind::DependencyOrder:
    return "DependencyOrder";
  case ViolationKind::CrossCircuitMovement:
    return "CrossCircuitMovement";
  case ViolationKind::CrossCircuitGateSite:
    return "CrossCircuitGateSite";
  case ViolationKind::OutOfBounds:
    return "OutOfBounds";
  }
  return "?";
}

std::size_t ViolationReport::count(ViolationKind k) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; }));
}

nlohmann::json to_json(const Violation& v) {
  nlohmann::json j = {{"kind", to_string(v.kind)}, {"entities", v.entities}, {"detail", v.detail}};
  j["stage"] = v.stage ? nlohmann::json(*v.stage) : nlohmann::json(nullptr);
  return j;
}

std::string ViolationReport::to_json_lines() const {
  std::string out;
  for (const Violation& v : violations) {
    out += to_json(v).dump();
    out += '\n';
  }
  return out;
}

namespace {

std::string qubit(std::size_t circuit, QubitId q) {
  return "c" + std::to_string(circuit) + ".q" + std::to_string(q);
}

std::string gate(std::size_t circuit, GateId g) {
  return "c" + std::to_string(circuit) + ".g" + std::to_string(g);
}

std::string where(Site s) { return "(" + std::to_string(s.x) + "," + std::to_string(s.y) + ")"; }

/// Layout index u: 0 is the loading layout, u = k + 1 the layout at stage k.
std::optional<std::size_t> stage_of(std::size_t u) {
  return u == 0 ? std::nullopt : std::optional<std::size_t>(u - 1);
}

/// True when a motion keeps its side of another on one axis.
bool keeps_side(int a0, int a1, int b0, int b1) {
  if (a0 < b0) {
    return a1 < b1;
  }
  if (a0 > b0) {
    return a1 > b1;
  }
  return a1 == b1;
}

/// True when two lines with indices li, lj sit at positions pi, pj in a
/// consistent order.
bool lines_ordered(int li, int lj, int pi, int pj) {
  if (li < lj) {
    return pi <= pj;
  }
  if (li > lj) {
    return pi >= pj;
  }
  return pi == pj;
}

class SingleChecker {
public:
  SingleChecker(const CompiledSchedule& s, const GridSpec& g, std::size_t circuit,
                ViolationReport& out)
      : sched_(s), grid_(g), id_(circuit), out_(out) {
    layouts_.push_back(&s.initial);
    for (const Layout& l : s.stages) {
      layouts_.push_back(&l);
    }
    for (std::size_t u = 0; u < layouts_.size(); ++u) {
      if (layouts_[u]->size() != s.num_qubits) {
        throw std::invalid_argument("layout " + std::to_string(u) + " of '" + s.circuit +
                                    "' does not cover every qubit");
      }
    }
  }

  void run() {
    bounds();
    gates();
    exclusivity();
    aod();
    slm();
    dependencies();
  }

private:
  void add(ViolationKind k, std::optional<std::size_t> stage, std::vector<std::string> who,
           std::string detail) {
    out_.violations.push_back(Violation{k, stage, std::move(who), std::move(detail)});
  }

  /// Stage of gate g when it names a stored layout.
  std::optional<std::size_t> stage_index(GateId g) const {
    if (g >= sched_.gate_stage.size()) {
      return std::nullopt;
    }
    const int s = sched_.gate_stage[g];
    if (s < 0 || static_cast<std::size_t>(s) >= sched_.stages.size()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(s);
  }

  void bounds() {
    for (std::size_t u = 0; u < layouts_.size(); ++u) {
      for (QubitId q = 0; q < sched_.num_qubits; ++q) {
        const QubitState& st = (*layouts_[u])[q];
        if (!grid_.contains(st.site)) {
          add(ViolationKind::OutOfBounds, stage_of(u), {qubit(id_, q)},
              "site " + where(st.site) + " outside " + grid_.to_string());
        }
        if (st.aod && (st.col < 0 || st.col >= grid_.aod_cols || st.row < 0 ||
                       st.row >= grid_.aod_rows)) {
          add(ViolationKind::OutOfBounds, stage_of(u), {qubit(id_, q)},
              "AOD line (" + std::to_string(st.col) + "," + std::to_string(st.row) +
                  ") does not exist");
        }
      }
    }
    for (const Gate& g : sched_.gates) {
      if (!stage_index(g.id)) {
        add(ViolationKind::OutOfBounds, std::nullopt, {gate(id_, g.id)},
            "gate has no stage within the schedule");
      }
      if (g.qubits[0] >= sched_.num_qubits || g.qubits[1] >= sched_.num_qubits ||
          g.qubits[0] == g.qubits[1]) {
        add(ViolationKind::OutOfBounds, std::nullopt, {gate(id_, g.id)}, "bad operands");
      }
    }
  }

  bool operands_ok(const Gate& g) const {
    return g.qubits[0] < sched_.num_qubits && g.qubits[1] < sched_.num_qubits;
  }

  void gates() {
    for (const Gate& g : sched_.gates) {
      const auto s = stage_index(g.id);
      if (!s || !operands_ok(g)) {
        continue;
      }
      const Layout& l = sched_.stages[*s];
      if (l[g.qubits[0]].site != l[g.qubits[1]].site) {
        add(ViolationKind::GateNotColocated, s,
            {gate(id_, g.id), qubit(id_, g.qubits[0]), qubit(id_, g.qubits[1])},
            "operands at " + where(l[g.qubits[0]].site) + " and " +
                where(l[g.qubits[1]].site));
      }
    }
  }

  void exclusivity() {
    const Layout& init = sched_.initial;
    for (QubitId i = 0; i < sched_.num_qubits; ++i) {
      for (QubitId j = i + 1; j < sched_.num_qubits; ++j) {
        if (init[i].site == init[j].site) {
          add(ViolationKind::ExclusivityBreach, std::nullopt, {qubit(id_, i), qubit(id_, j)},
              "loaded onto the same site " + where(init[i].site));
        }
      }
    }
    for (std::size_t s = 0; s < sched_.stages.size(); ++s) {
      std::map<Site, std::vector<QubitId>> at;
      for (QubitId q = 0; q < sched_.num_qubits; ++q) {
        at[sched_.stages[s][q].site].push_back(q);
      }
      for (const auto& [site, qs] : at) {
        if (qs.size() > 2) {
          std::vector<std::string> who;
          for (const QubitId q : qs) {
            who.push_back(qubit(id_, q));
          }
          add(ViolationKind::ExclusivityBreach, s, std::move(who),
              std::to_string(qs.size()) + " atoms share site " + where(site));
        }
      }
    }
    for (const Gate& g : sched_.gates) {
      const auto s = stage_index(g.id);
      if (!s || !operands_ok(g)) {
        continue;
      }
      const Layout& l = sched_.stages[*s];
      const Site site = l[g.qubits[0]].site;
      for (QubitId q = 0; q < sched_.num_qubits; ++q) {
        if (!g.acts_on(q) && l[q].site == site) {
          add(ViolationKind::ExclusivityBreach, s, {gate(id_, g.id), qubit(id_, q)},
              "idle atom inside the gate site " + where(site));
        }
      }
    }
  }

  void aod() {
    for (std::size_t u = 0; u < layouts_.size(); ++u) {
      const Layout& l = *layouts_[u];
      for (QubitId i = 0; i < sched_.num_qubits; ++i) {
        for (QubitId j = i + 1; j < sched_.num_qubits; ++j) {
          if (!l[i].aod || !l[j].aod) {
            continue;
          }
          const bool cols = lines_ordered(l[i].col, l[j].col, l[i].site.x, l[j].site.x);
          const bool rows = lines_ordered(l[i].row, l[j].row, l[i].site.y, l[j].site.y);
          if (!cols || !rows) {
            add(ViolationKind::AODCrossing, stage_of(u), {qubit(id_, i), qubit(id_, j)},
                std::string(!cols ? "columns" : "rows") + " out of order");
          }
        }
      }
    }
    for (std::size_t u = 0; u + 1 < layouts_.size(); ++u) {
      for (QubitId q = 0; q < sched_.num_qubits; ++q) {
        const QubitState& a = (*layouts_[u])[q];
        const QubitState& b = (*layouts_[u + 1])[q];
        if (a.aod && b.aod && (a.col != b.col || a.row != b.row)) {
          add(ViolationKind::AODCrossing, u, {qubit(id_, q)},
              "AOD line changed while the atom was held");
        }
      }
    }
  }

  void slm() {
    for (std::size_t u = 0; u + 1 < layouts_.size(); ++u) {
      for (QubitId q = 0; q < sched_.num_qubits; ++q) {
        const QubitState& a = (*layouts_[u])[q];
        const QubitState& b = (*layouts_[u + 1])[q];
        if (!(a.aod && b.aod) && a.site != b.site) {
          add(ViolationKind::SLMDrift, u, {qubit(id_, q)},
              "moved " + where(a.site) + " -> " + where(b.site) + " outside the AOD");
        }
      }
    }
  }

  void dependencies() {
    const auto& gs = sched_.gates;
    for (std::size_t a = 0; a < gs.size(); ++a) {
      for (std::size_t b = a + 1; b < gs.size(); ++b) {
        if (!gs[a].shares_qubit(gs[b])) {
          continue;
        }
        const auto sa = stage_index(gs[a].id);
        const auto sb = stage_index(gs[b].id);
        if (sa && sb && *sa >= *sb) {
          add(ViolationKind::DependencyOrder, sb, {gate(id_, gs[a].id), gate(id_, gs[b].id)},
              "stage " + std::to_string(*sa) + " is not before stage " + std::to_string(*sb));
        }
      }
    }
  }

  const CompiledSchedule& sched_;
  const GridSpec& grid_;
  std::size_t id_;
  ViolationReport& out_;
  std::vector<const Layout*> layouts_;
};

} // namespace

ViolationReport validate_single(const CompiledSchedule& sched, const GridSpec& grid) {
  ViolationReport r;
  SingleChecker(sched, grid, 0, r).run();
  return r;
}

ViolationReport validate_joint(const ArrayOccupancy& occ) {
  ViolationReport r;
  const auto& seqs = occ.committed();
  const GridSpec& grid = occ.grid();
  std::vector<std::vector<Layout>> layouts;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    SingleChecker(to_schedule(seqs[i]), grid, i, r).run();
    layouts.push_back(replay(seqs[i]));
  }
  const auto add = [&r](ViolationKind k, std::optional<std::size_t> stage,
                        std::vector<std::string> who, std::string detail) {
    r.violations.push_back(Violation{k, stage, std::move(who), std::move(detail)});
  };

  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::size_t j = i + 1; j < seqs.size(); ++j) {
      const Layout& a = layouts[i].front();
      const Layout& b = layouts[j].front();
      for (QubitId p = 0; p < a.size(); ++p) {
        for (QubitId q = 0; q < b.size(); ++q) {
          if (a[p].site == b[q].site) {
            add(ViolationKind::ExclusivityBreach, std::nullopt, {qubit(i, p), qubit(j, q)},
                "loaded onto the same site " + where(a[p].site));
          }
        }
      }
    }
  }

  std::size_t horizon = 0;
  for (const auto& l : layouts) {
    horizon = std::max(horizon, l.size() - 1);
  }
  for (std::size_t k = 0; k < horizon; ++k) {
    // circuits still running at stage k
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      if (k + 1 < layouts[i].size()) {
        live.push_back(i);
      }
    }
    for (std::size_t ai = 0; ai < live.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < live.size(); ++bi) {
        const std::size_t i = live[ai];
        const std::size_t j = live[bi];
        const Layout& i0 = layouts[i][k];
        const Layout& i1 = layouts[i][k + 1];
        const Layout& j0 = layouts[j][k];
        const Layout& j1 = layouts[j][k + 1];
        // a committed movement binds every atom the later circuit holds in
        // the AOD through the same step
        for (QubitId p = 0; p < i0.size(); ++p) {
          if (!(i0[p].aod && i1[p].aod) || i0[p] == i1[p]) {
            continue;
          }
          for (QubitId q = 0; q < j0.size(); ++q) {
            if (!(j0[q].aod && j1[q].aod)) {
              continue;
            }
            const bool x = keeps_side(j0[q].site.x, j1[q].site.x, i0[p].site.x, i1[p].site.x);
            const bool y = keeps_side(j0[q].site.y, j1[q].site.y, i0[p].site.y, i1[p].site.y);
            if (!x || !y) {
              add(ViolationKind::CrossCircuitMovement, k, {qubit(i, p), qubit(j, q)},
                  std::string(!x ? "columns" : "rows") + " " + where(i0[p].site) + "->" +
                      where(i1[p].site) + " and " + where(j0[q].site) + "->" +
                      where(j1[q].site) + " change order");
            }
          }
        }

        const bool strict = seqs[j].strict_exclusivity;
        const auto events = [&](std::size_t s) {
          return k < seqs[s].cycles.size() ? seqs[s].cycles[k].gate_events
                                           : std::vector<GateEvent>{};
        };
        const auto ei = events(i);
        const auto ej = events(j);
        if (!strict) {
          for (const GateEvent& e : ei) {
            for (const GateEvent& f : ej) {
              if (e.site == f.site) {
                add(ViolationKind::CrossCircuitGateSite, k, {gate(i, e.gate), gate(j, f.gate)},
                    "both gates use site " + where(e.site));
              }
            }
          }
          continue;
        }
        const auto intrude = [&](const std::vector<GateEvent>& evs, std::size_t owner,
                                 const Layout& other, std::size_t other_id) {
          for (const GateEvent& e : evs) {
            for (QubitId q = 0; q < other.size(); ++q) {
              if (other[q].site == e.site) {
                add(ViolationKind::CrossCircuitGateSite, k,
                    {gate(owner, e.gate), qubit(other_id, q)},
                    "foreign atom inside gate site " + where(e.site));
              }
            }
          }
        };
        intrude(ei, i, j1, j);
        intrude(ej, j, i1, i);
      }
    }

    // site capacity across circuits, under the strict rule
    std::map<Site, std::vector<std::pair<std::size_t, QubitId>>> at;
    for (const std::size_t i : live) {
      const Layout& l = layouts[i][k + 1];
      for (QubitId q = 0; q < l.size(); ++q) {
        at[l[q].site].emplace_back(i, q);
      }
    }
    for (const auto& [site, atoms] : at) {
      std::size_t latest = 0;
      bool mixed = false;
      for (const auto& [i, q] : atoms) {
        latest = std::max(latest, i);
        mixed = mixed || i != atoms.front().first;
      }
      if (atoms.size() > 2 && mixed && seqs[latest].strict_exclusivity) {
        std::vector<std::string> who;
        for (const auto& [i, q] : atoms) {
          who.push_back(qubit(i, q));
        }
        add(ViolationKind::ExclusivityBreach, k, std::move(who),
            std::to_string(atoms.size()) + " atoms share site " + where(site));
      }
    }
  }
  return r;
}

} // namespace atomplex
