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

#include "atomplex/metrics.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace atomplex {

SequentialResult compile_sequential(const std::vector<Circuit>& circuits, const GridSpec& grid,
                                    Seconds budget, const CompilerOptions& opts) {
  SequentialResult r;
  for (const Circuit& c : circuits) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      CompiledSchedule s = solve_window(c, grid, ArrayOccupancy(grid), budget, opts);
      r.total_stages += s.stage_count();
      r.total_seconds += s.solve_seconds;
      r.schedules.push_back(std::move(s));
    } catch (const CompileError& e) {
      r.total_seconds += Seconds(std::chrono::steady_clock::now() - t0).count();
      r.failure = e;
      break;
    }
  }
  return r;
}

Circuit merge_circuits(const std::vector<Circuit>& circuits) {
  if (circuits.empty()) {
    throw std::invalid_argument("nothing to merge");
  }
  std::size_t total = 0;
  std::string name;
  for (const Circuit& c : circuits) {
    total += c.num_qubits();
    name += (name.empty() ? "" : "+") + c.name();
  }
  Circuit merged(name, total);
  QubitId offset = 0;
  for (const Circuit& c : circuits) {
    for (const Gate& g : c.gates()) {
      merged.add_gate(g.qubits[0] + offset, g.qubits[1] + offset, g.label);
    }
    offset += static_cast<QubitId>(c.num_qubits());
  }
  return merged;
}

MergedResult compile_merged(const std::vector<Circuit>& circuits, const GridSpec& grid,
                            Seconds budget, const CompilerOptions& opts) {
  MergedResult r;
  const Circuit merged = merge_circuits(circuits);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.schedule = solve_window(merged, grid, ArrayOccupancy(grid), budget, opts);
    r.stages = r.schedule->stage_count();
    r.seconds = r.schedule->solve_seconds;
  } catch (const CompileError& e) {
    r.seconds = Seconds(std::chrono::steady_clock::now() - t0).count();
    r.failure = e;
  }
  return r;
}

double rpr(double l_dynamo, double l_baseline) {
  if (l_baseline == 0) {
    throw MetricError("RPR is undefined for a zero baseline stage count");
  }
  return 100.0 * (l_dynamo - l_baseline) / l_baseline;
}

double speedup(double t_dynamo, double t_baseline) {
  if (t_dynamo == 0) {
    throw MetricError("speedup is undefined for a zero compile time");
  }
  return t_baseline / t_dynamo;
}

double speedup_literal(double t_dynamo, double t_baseline) {
  if (t_baseline == 0) {
    throw MetricError("speedup is undefined for a zero baseline compile time");
  }
  return t_dynamo / t_baseline;
}

std::vector<DeltaRow> delta_stage_accounting(const ArrayCompileResult& run) {
  std::vector<DeltaRow> out;
  for (const CircuitOutcome& o : run.outcomes) {
    out.push_back(DeltaRow{o.circuit, o.delta_stages(), o.seconds, o.ok()});
  }
  return out;
}

std::vector<std::size_t> deltas(const std::vector<std::size_t>& joint_counts) {
  std::vector<std::size_t> out;
  std::size_t prev = 0;
  for (const std::size_t l : joint_counts) {
    if (l < prev) {
      throw std::invalid_argument("joint stage counts must not decrease");
    }
    out.push_back(l - prev);
    prev = l;
  }
  return out;
}

const char* to_string(BaselineKind k) {
  return k == BaselineKind::Sequential ? "sequential" : "merged";
}

MetricRow MetricRow::make(std::string workload, BaselineKind kind, std::size_t l_dynamo,
                          std::size_t l_baseline, double t_dynamo, double t_baseline) {
  MetricRow r;
  r.workload = std::move(workload);
  r.baseline = kind;
  r.l_dynamo = l_dynamo;
  r.l_baseline = l_baseline;
  r.t_dynamo = t_dynamo;
  r.t_baseline = t_baseline;
  r.rpr = atomplex::rpr(static_cast<double>(l_dynamo), static_cast<double>(l_baseline));
  r.speedup = atomplex::speedup(t_dynamo, t_baseline);
  return r;
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  // avoid "-0.00"
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
    s.erase(0, 1);
  }
  return s;
}

std::string metric_csv_header() {
  return "workload,baseline,L_DYNAMO,L_baseline,T_DYNAMO,T_baseline,RPR,Speedup";
}

std::string to_csv(const MetricRow& r) {
  return r.workload + "," + to_string(r.baseline) + "," + std::to_string(r.l_dynamo) + "," +
         std::to_string(r.l_baseline) + "," + format_fixed(r.t_dynamo) + "," +
         format_fixed(r.t_baseline) + "," + format_fixed(r.rpr) + "," +
         format_fixed(r.speedup);
}

} // namespace atomplex
