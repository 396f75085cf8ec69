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

#include "atomplex/compiler.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>

namespace atomplex {

using smt::Expr;

const char* to_string(Family f) {
  switch (f) {
  case Family::Bounds:
    return "bounds";
  case Family::Trap:
    return "trap";
  case Family::AodOrder:
    return "aod-order";
  case Family::GateExecution:
    return "gate-exec";
  case Family::Exclusivity:
    return "exclusivity";
  case Family::Dependency:
    return "dependency";
  case Family::MultiprogramMovement:
    return "multiprogram-movement";
  case Family::MultiprogramGates:
    return "multiprogram-gates";
  }
  return "?";
}

//===----------------------------------------------------------------------===//
// VariableSet
//===----------------------------------------------------------------------===//

VariableSet::VariableSet(const GridSpec& grid, std::size_t num_qubits, std::size_t snapshots,
                         const std::optional<Layout>& fixed_start)
    : num_qubits_(num_qubits), snapshots_(snapshots) {
  qubits_.reserve(num_qubits * snapshots);
  for (std::size_t s = 0; s < snapshots; ++s) {
    for (QubitId q = 0; q < num_qubits; ++q) {
      if (s == 0 && fixed_start) {
        const QubitState& st = fixed_start->at(q);
        qubits_.push_back(QubitVars{Expr::constant(st.site.x), Expr::constant(st.site.y),
                                    Expr::constant(st.aod ? 1 : 0),
                                    Expr::constant(st.aod ? st.col : 0),
                                    Expr::constant(st.aod ? st.row : 0)});
        continue;
      }
      const std::string suffix = std::to_string(q) + "_" + std::to_string(s);
      QubitVars v;
      v.x = declare("x" + suffix, 0, grid.x_sites - 1);
      v.y = declare("y" + suffix, 0, grid.y_sites - 1);
      v.a = declare("a" + suffix, 0, 1);
      v.c = declare("c" + suffix, 0, grid.aod_cols - 1);
      v.r = declare("r" + suffix, 0, grid.aod_rows - 1);
      qubits_.push_back(std::move(v));
    }
  }
}

void VariableSet::add_gate(GateId g, std::int64_t lo, std::int64_t hi) {
  if (stage_.size() <= g) {
    stage_.resize(g + 1);
    scheduled_.resize(g + 1);
  }
  stage_[g] = declare("t" + std::to_string(g), lo, hi);
  scheduled_[g] = declare("sched" + std::to_string(g), 0, 1);
}

Expr VariableSet::declare(std::string name, std::int64_t lo, std::int64_t hi) {
  const auto id = static_cast<smt::VarId>(decls_.size());
  decls_.push_back(smt::VarDecl{std::move(name), lo, hi});
  return Expr::variable(id);
}

std::vector<Expr> EncodedProblem::assertions() const {
  std::vector<Expr> out;
  for (const auto& f : families) {
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Encoding
//===----------------------------------------------------------------------===//

namespace {

using QV = VariableSet::QubitVars;

Expr on(const Expr& flag) { return flag == 1; }

Expr same_site(const QV& a, const QV& b) { return a.x == b.x && a.y == b.y; }

Expr at_site(const QV& a, Site s) {
  return a.x == static_cast<std::int64_t>(s.x) && a.y == static_cast<std::int64_t>(s.y);
}

Expr runs_at(const VariableSet& v, GateId g, std::size_t stage) {
  return on(v.scheduled(g)) && v.stage(g) == static_cast<std::int64_t>(stage);
}

Expr carried(const VariableSet& v, QubitId q, std::size_t s) {
  return on(v.at(q, s).a) && on(v.at(q, s + 1).a);
}

/// Lines of one axis keep their order relative to each other.
Expr line_order(const Expr& li, const Expr& lj, const Expr& pi, const Expr& pj) {
  return smt::all_of({implies(li < lj, pi <= pj), implies(lj < li, pj <= pi),
                 implies(li == lj, pi == pj)});
}

/// A line moving from `from` to `to` keeps its side of one moving from m0 to
/// m1.
Expr side_kept(const Expr& from, const Expr& to, int m0, int m1) {
  return smt::all_of({implies(from < m0, to < m1), implies(from > m0, to > m1),
                 implies(from == m0, to == m1)});
}

/// Latest earlier gate on each operand, without duplicates.
std::vector<std::vector<GateId>> immediate_predecessors(const Circuit& c) {
  std::vector<std::vector<GateId>> preds(c.num_gates());
  std::vector<std::optional<GateId>> last(c.num_qubits());
  for (const Gate& g : c.gates()) {
    for (const QubitId q : g.qubits) {
      if (last[q] && std::find(preds[g.id].begin(), preds[g.id].end(), *last[q]) ==
                         preds[g.id].end()) {
        preds[g.id].push_back(*last[q]);
      }
    }
    for (const QubitId q : g.qubits) {
      last[q] = g.id;
    }
  }
  return preds;
}

} // namespace

EncodedProblem encode_window(const Circuit& c, const GridSpec& grid, const WindowSpec& window,
                             bool strict_exclusivity) {
  if (window.stages == 0) {
    throw std::invalid_argument("window needs at least one stage");
  }
  if (window.prior && window.prior->size() != c.num_qubits()) {
    throw std::invalid_argument("prior layout does not match the circuit");
  }
  EncodedProblem p;
  p.circuit = c;
  p.grid = grid;
  p.window = window;
  p.strict_exclusivity = strict_exclusivity;

  const std::size_t n = c.num_qubits();
  const std::size_t K = window.stages;
  const std::size_t first = window.first_stage;
  const std::size_t last =
      first + (window.gate_stages == 0 ? K : std::min(K, window.gate_stages)) - 1;
  const std::size_t lo = std::max(first, window.min_gate_stage);
  const auto active = [&](GateId g) { return window.active.empty() || window.active[g]; };

  p.vars = VariableSet(grid, n, K + 1, window.prior);
  for (const Gate& g : c.gates()) {
    if (active(g.id)) {
      p.vars.add_gate(g.id, static_cast<std::int64_t>(first), static_cast<std::int64_t>(last));
    }
  }
  const VariableSet& v = p.vars;
  const std::size_t first_free = window.prior ? 1 : 0;

  auto& bounds = p.family(Family::Bounds);
  for (std::size_t s = first_free; s <= K; ++s) {
    for (QubitId q = 0; q < n; ++q) {
      const QV& qv = v.at(q, s);
      bounds.push_back(implies(qv.a == 0, qv.c == 0 && qv.r == 0));
    }
  }
  for (const Gate& g : c.gates()) {
    if (!active(g.id)) {
      continue;
    }
    // unscheduled gates get a fixed stage, to avoid symmetric models
    bounds.push_back(implies(v.scheduled(g.id) == 0,
                             v.stage(g.id) == static_cast<std::int64_t>(first)));
    if (lo > last) {
      bounds.push_back(v.scheduled(g.id) == 0);
    } else if (lo > first) {
      bounds.push_back(implies(on(v.scheduled(g.id)),
                               v.stage(g.id) >= static_cast<std::int64_t>(lo)));
    }
  }

  auto& trap = p.family(Family::Trap);
  for (std::size_t s = 0; s < K; ++s) {
    for (QubitId q = 0; q < n; ++q) {
      const QV& a = v.at(q, s);
      const QV& b = v.at(q, s + 1);
      const Expr moving = carried(v, q, s);
      trap.push_back(implies(moving, b.c == a.c && b.r == a.r));
      trap.push_back(implies(!moving, b.x == a.x && b.y == a.y));
    }
  }

  auto& order = p.family(Family::AodOrder);
  for (std::size_t s = first_free; s <= K; ++s) {
    for (QubitId i = 0; i < n; ++i) {
      for (QubitId j = i + 1; j < n; ++j) {
        const QV& a = v.at(i, s);
        const QV& b = v.at(j, s);
        order.push_back(implies(on(a.a) && on(b.a),
                                line_order(a.c, b.c, a.x, b.x) && line_order(a.r, b.r, a.y, b.y)));
      }
    }
  }

  auto& exec = p.family(Family::GateExecution);
  auto& excl = p.family(Family::Exclusivity);
  for (const Gate& g : c.gates()) {
    if (!active(g.id)) {
      continue;
    }
    if (window.require_all) {
      exec.push_back(on(v.scheduled(g.id)));
    }
    const auto [p0, p1] = g.qubits;
    for (std::size_t s = lo - first; first + s <= last; ++s) {
      const Expr runs = runs_at(v, g.id, first + s);
      const QV& op = v.at(p0, s + 1);
      exec.push_back(implies(runs, same_site(op, v.at(p1, s + 1))));
      for (QubitId k = 0; k < n; ++k) {
        if (!g.acts_on(k)) {
          excl.push_back(implies(runs, !same_site(v.at(k, s + 1), op)));
        }
      }
    }
  }
  for (std::size_t s = 1; s <= K; ++s) {
    std::vector<Expr> same(n * n);
    for (QubitId i = 0; i < n; ++i) {
      for (QubitId j = i + 1; j < n; ++j) {
        same[i * n + j] = same_site(v.at(i, s), v.at(j, s));
      }
    }
    for (QubitId i = 0; i < n; ++i) {
      for (QubitId j = i + 1; j < n; ++j) {
        for (QubitId k = j + 1; k < n; ++k) {
          excl.push_back(!(same[i * n + j] && same[i * n + k]));
        }
      }
    }
  }
  if (!window.prior) {
    for (QubitId i = 0; i < n; ++i) {
      for (QubitId j = i + 1; j < n; ++j) {
        excl.push_back(!same_site(v.at(i, 0), v.at(j, 0)));
      }
    }
  }

  auto& dep = p.family(Family::Dependency);
  const auto preds = immediate_predecessors(c);
  for (const Gate& h : c.gates()) {
    if (!active(h.id)) {
      continue;
    }
    for (const GateId g : preds[h.id]) {
      if (active(g)) {
        dep.push_back(implies(on(v.scheduled(h.id)),
                              on(v.scheduled(g)) && v.stage(g) < v.stage(h.id)));
      }
    }
  }
  return p;
}

EncodedProblem encode_base(const Circuit& c, const GridSpec& grid, std::size_t horizon,
                           bool strict_exclusivity) {
  WindowSpec w;
  w.stages = horizon;
  return encode_window(c, grid, w, strict_exclusivity);
}

EncodedProblem encode_multiprogram(EncodedProblem p, const ArrayOccupancy& occ) {
  if (occ.empty()) {
    return p;
  }
  const VariableSet& v = p.vars;
  const std::size_t n = p.circuit.num_qubits();
  const std::size_t K = p.window.stages;
  const std::size_t first = p.window.first_stage;
  auto& moves = p.family(Family::MultiprogramMovement);
  auto& gates = p.family(Family::MultiprogramGates);

  if (!p.window.prior && first == 0) {
    for (const AtomRecord& a : occ.initial_atoms()) {
      for (QubitId q = 0; q < n; ++q) {
        gates.push_back(!at_site(v.at(q, 0), a.state.site));
      }
    }
  }

  for (std::size_t s = 0; s < K; ++s) {
    const std::size_t k = first + s;
    const auto committed_moves = occ.movements_at(k);
    for (QubitId q = 0; q < n && !committed_moves.empty(); ++q) {
      const QV& a = v.at(q, s);
      const QV& b = v.at(q, s + 1);
      std::vector<Expr> rules;
      for (const Movement& m : committed_moves) {
        rules.push_back(side_kept(a.x, b.x, m.from.x, m.to.x));
        rules.push_back(side_kept(a.y, b.y, m.from.y, m.to.y));
      }
      moves.push_back(implies(carried(v, q, s), smt::all_of(std::move(rules))));
    }

    std::set<Site> gate_sites;
    for (const GateEvent& e : occ.gate_events_at(k)) {
      gate_sites.insert(e.site);
    }
    const auto runs = [&](const Gate& g) { return runs_at(v, g.id, k); };
    if (!p.strict_exclusivity) {
      for (const Gate& g : p.circuit.gates()) {
        if (!v.has_gate(g.id)) {
          continue;
        }
        for (const Site site : gate_sites) {
          gates.push_back(implies(runs(g), !at_site(v.at(g.qubits[0], s + 1), site) &&
                                               !at_site(v.at(g.qubits[1], s + 1), site)));
        }
      }
      continue;
    }
    for (QubitId q = 0; q < n; ++q) {
      for (const Site site : gate_sites) {
        gates.push_back(!at_site(v.at(q, s + 1), site));
      }
    }
    std::map<Site, int> atoms;
    for (const AtomRecord& a : occ.atoms_at_stage(k)) {
      ++atoms[a.state.site];
    }
    for (const Gate& g : p.circuit.gates()) {
      if (!v.has_gate(g.id)) {
        continue;
      }
      for (const auto& [site, count] : atoms) {
        if (!gate_sites.contains(site)) {
          gates.push_back(implies(runs(g), !at_site(v.at(g.qubits[0], s + 1), site)));
        }
      }
    }
    // at most two atoms per site, counting both circuits
    for (const auto& [site, count] : atoms) {
      if (gate_sites.contains(site)) {
        continue;
      }
      for (QubitId i = 0; i < n; ++i) {
        if (count >= 2) {
          gates.push_back(!at_site(v.at(i, s + 1), site));
          continue;
        }
        for (QubitId j = i + 1; j < n; ++j) {
          gates.push_back(!(at_site(v.at(i, s + 1), site) && at_site(v.at(j, s + 1), site)));
        }
      }
    }
  }
  return p;
}

void load(const EncodedProblem& p, smt::Backend& backend) {
  const auto& decls = p.vars.decls();
  for (std::size_t i = 0; i < decls.size(); ++i) {
    backend.declare(static_cast<smt::VarId>(i), decls[i]);
  }
  for (const auto& f : p.families) {
    for (const Expr& e : f) {
      backend.add(e);
    }
  }
}

namespace {

std::int64_t read(const smt::Model& m, const Expr& e) {
  return e.op() == smt::Op::Var ? m[e.var()] : e.value();
}

Layout read_layout(const smt::Model& m, const VariableSet& v, std::size_t s) {
  Layout l(v.num_qubits());
  for (QubitId q = 0; q < v.num_qubits(); ++q) {
    const QV& qv = v.at(q, s);
    QubitState& st = l[q];
    st.site = Site{static_cast<int>(read(m, qv.x)), static_cast<int>(read(m, qv.y))};
    st.aod = read(m, qv.a) != 0;
    if (st.aod) {
      st.col = static_cast<int>(read(m, qv.c));
      st.row = static_cast<int>(read(m, qv.r));
    }
  }
  return l;
}

} // namespace

CompiledSchedule extract_schedule(const smt::Model& model, const EncodedProblem& p, bool trim) {
  CompiledSchedule out;
  out.circuit = p.circuit.name();
  out.num_qubits = p.circuit.num_qubits();
  out.gates = p.circuit.gates();
  out.strict_exclusivity = p.strict_exclusivity;
  out.initial = read_layout(model, p.vars, 0);
  for (std::size_t s = 1; s < p.vars.snapshots(); ++s) {
    out.stages.push_back(read_layout(model, p.vars, s));
  }
  out.gate_stage.assign(out.gates.size(), -1);
  for (const Gate& g : out.gates) {
    if (p.vars.has_gate(g.id) && read(model, p.vars.scheduled(g.id)) != 0) {
      out.gate_stage[g.id] = static_cast<int>(read(model, p.vars.stage(g.id)));
    }
  }
  if (trim) {
    const std::size_t keep = out.stage_count() > p.window.first_stage
                                 ? out.stage_count() - p.window.first_stage
                                 : 0;
    out.stages.resize(std::min(out.stages.size(), keep));
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Greedy windowed solving
//===----------------------------------------------------------------------===//

namespace {

using Clock = std::chrono::steady_clock;

class WindowSolver {
public:
  WindowSolver(const Circuit& c, const GridSpec& grid, const ArrayOccupancy& occ,
               Seconds budget, const CompilerOptions& opts)
      : c_(c), grid_(grid), occ_(occ), opts_(opts), start_(Clock::now()),
        deadline_(start_ + std::chrono::duration_cast<Clock::duration>(budget)),
        preds_(immediate_predecessors(c)), done_(c.num_gates(), false) {}

  CompiledSchedule run() {
    const std::size_t n = c_.num_qubits();
    const auto sites = static_cast<std::size_t>(grid_.site_count());
    if (n > sites) {
      fail(CompileFailure::GridTooSmall, std::to_string(n) + " qubits do not fit " +
                                             std::to_string(sites) + " sites");
    }
    const std::size_t taken = occ_.initial_atoms().size();
    if (n + taken > sites) {
      fail(CompileFailure::GridTooSmall,
           std::to_string(n) + " qubits do not fit the " + std::to_string(sites - taken) +
               " sites left free by committed circuits");
    }
    if (opts_.window == 0) {
      throw std::invalid_argument("window must be at least one stage");
    }

    out_.circuit = c_.name();
    out_.num_qubits = n;
    out_.gates = c_.gates();
    out_.gate_stage.assign(c_.num_gates(), -1);
    out_.strict_exclusivity = opts_.strict_exclusivity;

    const std::size_t K = opts_.window;
    std::size_t idle_run = 0;
    for (std::size_t s = 0; !prior_ || done_count_ < c_.num_gates(); ++s) {
      const bool progressed = step(s);
      idle_run = progressed ? 0 : idle_run + 1;
      if (c_.num_gates() == 0) {
        out_.stages.clear();
        break;
      }
      if (idle_run > 2 * K && s >= std::max(occ_.horizon(), opts_.start_stage) + 2 * K) {
        fail(CompileFailure::Infeasible, "no gate could be placed for " +
                                             std::to_string(idle_run) + " stages");
      }
    }
    out_.solve_seconds = Seconds(Clock::now() - start_).count();
    return out_;
  }

private:
  [[noreturn]] void fail(CompileFailure kind, const std::string& detail) const {
    throw CompileError(kind, c_.name(), detail, out_.stages.size(), done_count_);
  }

  std::int64_t remaining_ms() const {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline_ -
                                                                            Clock::now());
    if (left.count() <= 0) {
      fail(CompileFailure::Timeout, "time limit reached");
    }
    return left.count();
  }

  bool check(smt::Backend& b) const {
    switch (b.check(remaining_ms())) {
    case smt::CheckResult::Sat:
      return true;
    case smt::CheckResult::Unsat:
      return false;
    case smt::CheckResult::Unknown:
      break;
    }
    remaining_ms();
    fail(CompileFailure::Timeout, "solver gave up before the time limit");
  }

  /// Pending dependency depth of every pending gate.
  std::vector<std::size_t> depths() const {
    std::vector<std::size_t> d(c_.num_gates(), 0);
    for (const Gate& g : c_.gates()) {
      for (const GateId p : preds_[g.id]) {
        if (!done_[p]) {
          d[g.id] = std::max(d[g.id], d[p] + 1);
        }
      }
    }
    return d;
  }

  /// Decides stage s. Returns whether a gate was placed in it.
  bool step(std::size_t s) {
    const std::size_t K = opts_.window;
    const auto depth = depths();
    WindowSpec w;
    w.first_stage = s;
    w.prior = prior_;
    w.require_all = false;
    w.min_gate_stage = opts_.start_stage;
    w.active.assign(c_.num_gates(), false);
    std::vector<GateId> ready;
    std::size_t active_count = 0;
    for (const Gate& g : c_.gates()) {
      if (!done_[g.id] && depth[g.id] < K) {
        w.active[g.id] = true;
        ++active_count;
        if (depth[g.id] == 0) {
          ready.push_back(g.id);
        }
      }
    }

    // Inside the committed horizon, look further ahead than the gate window
    // so that the kept stage does not lead into a layout the committed
    // circuits make impossible to continue. Shorter lookaheads are tried
    // before giving up.
    const std::size_t ahead = s < occ_.horizon() ? std::min(K, occ_.horizon() - s) : 0;
    EncodedProblem p;
    std::unique_ptr<smt::Backend> backend;
    for (std::size_t len = K + ahead;; --len) {
      w.stages = len;
      w.gate_stages = std::min(K, len);
      remaining_ms();
      p = encode_multiprogram(encode_window(c_, grid_, w, opts_.strict_exclusivity), occ_);
      backend = smt::make_backend(opts_.backend, opts_.seed);
      load(p, *backend);
      if (check(*backend)) {
        break;
      }
      if (len == 1) {
        if (!prior_ && occ_.empty()) {
          fail(CompileFailure::GridTooSmall, "no valid loading layout");
        }
        fail(CompileFailure::Infeasible,
             "committed circuits block stage " + std::to_string(s));
      }
    }
    smt::Model best = backend->model();

    if (s >= opts_.start_stage) {
      for (const GateId f : ready) {
        backend->push();
        backend->add(on(p.vars.scheduled(f)) && p.vars.stage(f) == static_cast<std::int64_t>(s));
        if (check(*backend)) {
          best = backend->model();
          break;
        }
        backend->pop();
      }
    }

    std::vector<Expr> flags;
    for (const Gate& g : c_.gates()) {
      if (w.active[g.id]) {
        flags.push_back(p.vars.scheduled(g.id));
      }
    }
    const auto scheduled = [&](const smt::Model& m) {
      std::size_t k = 0;
      for (const Expr& f : flags) {
        k += m[f.var()] != 0 ? 1 : 0;
      }
      return k;
    };
    std::size_t count = scheduled(best);
    while (count < active_count) {
      backend->push();
      backend->add(smt::sum(flags) >= static_cast<std::int64_t>(count + 1));
      if (!check(*backend)) {
        backend->pop();
        break;
      }
      best = backend->model();
      count = scheduled(best);
    }
    backend->add(smt::sum(flags) >= static_cast<std::int64_t>(count));

    // Among those, put as many gates as possible in the kept stage.
    std::vector<Expr> now;
    for (const Gate& g : c_.gates()) {
      if (w.active[g.id]) {
        now.push_back(on(p.vars.scheduled(g.id)) &&
                      p.vars.stage(g.id) == static_cast<std::int64_t>(s));
      }
    }
    const auto in_stage = [&](const smt::Model& m) {
      std::size_t k = 0;
      for (const Gate& g : c_.gates()) {
        if (w.active[g.id] && m[p.vars.scheduled(g.id).var()] != 0 &&
            m[p.vars.stage(g.id).var()] == static_cast<std::int64_t>(s)) {
          ++k;
        }
      }
      return k;
    };
    std::size_t kept = in_stage(best);
    while (kept < count) {
      backend->push();
      backend->add(smt::sum(now) >= static_cast<std::int64_t>(kept + 1));
      if (!check(*backend)) {
        backend->pop();
        break;
      }
      best = backend->model();
      kept = in_stage(best);
    }
    backend->add(smt::sum(now) >= static_cast<std::int64_t>(kept));

    // Fewer displaced atoms leave fewer movements for later circuits to
    // respect.
    std::vector<Expr> moved;
    for (QubitId q = 0; q < c_.num_qubits(); ++q) {
      const auto& a = p.vars.at(q, 0);
      const auto& b = p.vars.at(q, 1);
      moved.push_back(a.x != b.x || a.y != b.y);
    }
    const auto displaced = [&](const smt::Model& m) {
      std::int64_t k = 0;
      std::vector<std::int64_t> values(p.vars.decls().size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = m[static_cast<smt::VarId>(i)];
      }
      for (const Expr& e : moved) {
        k += smt::evaluate(e, values);
      }
      return k;
    };
    for (std::int64_t m = displaced(best); m > 0;) {
      backend->add(smt::sum(moved) <= m - 1);
      if (!check(*backend)) {
        break;
      }
      best = backend->model();
      m = displaced(best);
    }

    const CompiledSchedule window = extract_schedule(best, p, false);
    if (!prior_) {
      out_.initial = window.initial;
    }
    out_.stages.push_back(window.stages.front());
    prior_ = window.stages.front();
    bool progressed = false;
    for (const Gate& g : c_.gates()) {
      if (w.active[g.id] && window.gate_stage[g.id] == static_cast<int>(s)) {
        out_.gate_stage[g.id] = static_cast<int>(s);
        done_[g.id] = true;
        ++done_count_;
        progressed = true;
      }
    }
    return progressed;
  }

  const Circuit& c_;
  const GridSpec& grid_;
  const ArrayOccupancy& occ_;
  const CompilerOptions& opts_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  std::vector<std::vector<GateId>> preds_;
  std::vector<bool> done_;
  std::size_t done_count_ = 0;
  std::optional<Layout> prior_;
  CompiledSchedule out_;
};

} // namespace

CompiledSchedule solve_window(const Circuit& c, const GridSpec& grid, const ArrayOccupancy& occ,
                              Seconds budget, const CompilerOptions& opts) {
  return WindowSolver(c, grid, occ, budget, opts).run();
}

//===----------------------------------------------------------------------===//
// Per-array driver
//===----------------------------------------------------------------------===//

bool ArrayCompileResult::ok() const {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const CircuitOutcome& o) { return o.ok(); });
}

void ArrayCompileResult::throw_if_failed() const {
  std::size_t compiled = 0;
  for (const CircuitOutcome& o : outcomes) {
    if (o.ok()) {
      ++compiled;
      continue;
    }
    throw CompileError(*o.failure, o.circuit,
                       o.detail + " (" + std::to_string(compiled) +
                           " earlier circuits compiled)");
  }
}

ArrayCompileResult compile_on_array(const std::vector<Circuit>& circuits, const GridSpec& grid,
                                    Seconds budget, const CompilerOptions& opts,
                                    bool keep_going) {
  ArrayCompileResult result;
  result.occupancy = ArrayOccupancy(grid);
  for (const Circuit& c : circuits) {
    CircuitOutcome o;
    o.circuit = c.name();
    o.joint_before = result.occupancy.stage_count();
    const auto t0 = Clock::now();
    try {
      CompiledSchedule sched = solve_window(c, grid, result.occupancy, budget, opts);
      result.occupancy = commit(std::move(result.occupancy), decompose_to_cycles(sched));
      o.stages = sched.stage_count();
      result.schedules.push_back(std::move(sched));
    } catch (const CompileError& e) {
      o.failure = e.kind();
      o.detail = e.what();
    } catch (const CommitError& e) {
      o.failure = CompileFailure::Infeasible;
      o.detail = e.what();
    } catch (const DecompositionError& e) {
      o.failure = CompileFailure::Infeasible;
      o.detail = e.what();
    }
    o.seconds = Seconds(Clock::now() - t0).count();
    o.joint_after = result.occupancy.stage_count();
    const bool failed = !o.ok();
    result.outcomes.push_back(std::move(o));
    if (failed && !keep_going) {
      break;
    }
  }
  return result;
}

} // namespace atomplex
