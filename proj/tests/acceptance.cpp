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
#include "atomplex/compiler.hpp"
#include "atomplex/metrics.hpp"
#include "atomplex/placer.hpp"
#include "atomplex/validator.hpp"
#include "fixtures.hpp"
#include "oracle/brute_force.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace atomplex;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

LayeredCircuit shaped(std::string name, const std::vector<std::size_t>& widths) {
  LayeredCircuit lc;
  lc.circuit = Circuit(std::move(name), 0);
  GateId next = 0;
  for (const std::size_t w : widths) {
    std::vector<GateId> layer(w);
    std::iota(layer.begin(), layer.end(), next);
    next += static_cast<GateId>(w);
    lc.layers.push_back(std::move(layer));
  }
  return lc;
}

Outcome metric_exactness() {
  const double r = rpr(26, 27);
  const double s1 = speedup(1.64, 21.33);
  const double s2 = speedup(1.64, 1.50);
  std::ostringstream d;
  d << "rpr=" << format_fixed(r) << " speedup=" << format_fixed(s1) << ","
    << format_fixed(s2);
  return {near(r, -3.70, 0.01) && near(s1, 13.00, 0.01) && near(s2, 0.92, 0.01), d.str()};
}

Outcome merge_semantics() {
  Circuit a("a", 4);
  a.add_gate(0, 3);
  Circuit b("b", 6);
  b.add_gate(0, 5);
  Circuit c("c", 5);
  c.add_gate(0, 4);
  const Circuit merged = merge_circuits({a, b, c});
  const auto& g = merged.gates();
  const bool ok = merged.num_qubits() == 15 && g.size() == 3 && g[0].qubits[0] == 0 &&
                  g[0].qubits[1] == 3 && g[1].qubits[0] == 4 && g[1].qubits[1] == 9 &&
                  g[2].qubits[0] == 10 && g[2].qubits[1] == 14;
  return {ok, "blocks 0-3 / 4-9 / 10-14 over " + std::to_string(merged.num_qubits()) + " qubits"};
}

Outcome placer_properties() {
  std::mt19937 rng(2024);
  constexpr int kWorkloads = 1200;
  int broken = 0;
  std::string first;
  for (int w = 0; w < kWorkloads; ++w) {
    PlacementRequest req;
    req.num_arrays = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    req.capacity = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> widths(std::uniform_int_distribution<std::size_t>(1, 12)(rng));
      for (auto& x : widths) {
        x = std::uniform_int_distribution<std::size_t>(1, req.capacity)(rng);
      }
      req.circuits.push_back(shaped("c" + std::to_string(i), widths));
    }
    const Placement p = schedule_all(req);
    bool ok = p.slots.size() == n && p.timelines.size() == req.num_arrays;
    for (const ArrayTimeline& tl : p.timelines) {
      std::vector<std::size_t> usage;
      for (const Assignment& a : tl.assigned()) {
        const auto& layers = req.circuits[a.circuit].layers;
        usage.resize(std::max(usage.size(), a.start + layers.size()), 0);
        for (std::size_t k = 0; k < layers.size(); ++k) {
          usage[a.start + k] += layers[k].size();
        }
      }
      ok = ok && std::all_of(usage.begin(), usage.end(),
                             [&](std::size_t u) { return u <= req.capacity; });
      const auto& as = tl.assigned();
      for (std::size_t i = 1; i < as.size(); ++i) {
        ok = ok && std::pair(as[i - 1].feasible_start, as[i - 1].length) <=
                       std::pair(as[i].feasible_start, as[i].length);
      }
    }
    std::vector<std::size_t> by_len(n);
    std::iota(by_len.begin(), by_len.end(), 0);
    std::stable_sort(by_len.begin(), by_len.end(), [&](std::size_t a, std::size_t b) {
      return req.circuits[a].length() < req.circuits[b].length();
    });
    for (std::size_t i = 0; i < std::min(n, req.num_arrays); ++i) {
      ok = ok && p.slots[by_len[i]].start == 0 && p.slots[by_len[i]].array == i;
    }
    if (!ok) {
      ++broken;
      if (first.empty()) {
        first = " first failure at workload " + std::to_string(w);
      }
    }
  }
  return {broken == 0,
          std::to_string(kWorkloads) + " workloads, " + std::to_string(broken) + " broken" + first};
}

Outcome placer_table_check() {
  const std::vector<std::pair<std::string, std::size_t>> group{
      {"4mod5-v1_22", 12}, {"bv_n16", 19},    {"alu-v0_27", 21}, {"mod5mils_65", 21},
      {"decod24-v2_43", 30}, {"qv_n16_d5", 36}, {"4gt13_92", 38}};
  PlacementRequest req;
  req.num_arrays = 3;
  req.capacity = 8;
  for (const auto& [name, depth] : group) {
    req.circuits.push_back(shaped(name, std::vector<std::size_t>(depth, 1)));
  }
  const Placement p = schedule_all(req);
  std::ostringstream d;
  bool ok = true;
  const std::vector<std::string> expect{"4mod5-v1_22", "bv_n16", "alu-v0_27"};
  for (std::size_t a = 0; a < 3; ++a) {
    const auto order = p.order(a);
    const std::size_t first = order.front();
    const std::string& name = req.circuits[first].circuit.name();
    d << (a ? " " : "") << "QPU" << a << "=" << name << "@" << p.slots[first].start;
    ok = ok && name == expect[a] && p.slots[first].start == 0;
  }
  return {ok, d.str()};
}

Outcome oracle_equivalence() {
  const GridSpec g = GridSpec::square(3, 3);
  std::size_t instances = 0;
  std::size_t mismatches = 0;
  std::string first;
  for (std::size_t q = 1; q <= 3; ++q) {
    for (std::size_t n = 0; n <= 2; ++n) {
      if (q < 2 && n > 0) {
        continue;
      }
      for (const Circuit& c : testing::all_circuits(q, n)) {
        ++instances;
        std::optional<std::size_t> got;
        bool valid = false;
        try {
          const CompiledSchedule s = solve_window(c, g, ArrayOccupancy(g), Seconds(60));
          got = s.stage_count();
          valid = validate_single(s, g).ok();
        } catch (const CompileError&) {
        }
        const auto want = oracle::exhaustive_min_stages(c, g, 4);
        if (!valid || got != want) {
          ++mismatches;
          if (first.empty()) {
            std::ostringstream d;
            d << " first: " << c.name() << " got " << (got ? std::to_string(*got) : "none")
              << " oracle " << (want ? std::to_string(*want) : "none")
              << (valid ? "" : " invalid");
            first = d.str();
          }
        }
      }
    }
  }
  return {mismatches == 0 && instances > 0, std::to_string(instances) + " instances, " +
                                                std::to_string(mismatches) + " mismatches" +
                                                first};
}

struct RandomRun {
  std::size_t workloads = 0;
  std::size_t compiled = 0;
  std::size_t violations = 0;
  std::size_t worse = 0;
  std::string first;
};

RandomRun random_pairs() {
  const GridSpec g = GridSpec::square(6, 6);
  RandomRun out;
  std::mt19937 rng(77);
  for (int w = 0; w < 200; ++w) {
    const auto pair = testing::random_pair(rng);
    ++out.workloads;
    const ArrayCompileResult r = compile_on_array(pair, g, Seconds(120));
    if (!r.ok()) {
      continue;
    }
    ++out.compiled;
    const ViolationReport rep = validate_joint(r.occupancy);
    if (!rep.ok()) {
      ++out.violations;
      if (out.first.empty()) {
        out.first = " first violation in workload " + std::to_string(w) + ": " +
                    rep.to_json_lines().substr(0, 200);
      }
    }
    const SequentialResult seq = compile_sequential(pair, g, Seconds(120));
    if (seq.ok() && r.occupancy.stage_count() > seq.total_stages) {
      ++out.worse;
    }
  }
  return out;
}

Outcome multiprogram_soundness(const RandomRun& r) {
  return {r.workloads >= 200 && r.compiled > 0 && r.violations == 0,
          std::to_string(r.compiled) + "/" + std::to_string(r.workloads) + " compiled, " +
              std::to_string(r.violations) + " with violations" + r.first};
}

Outcome mutation_completeness() {
  std::ostringstream d;
  bool ok = true;
  std::size_t flagged = 0;
  for (std::size_t k = 0; k < kViolationKindCount; ++k) {
    const auto kind = static_cast<ViolationKind>(k);
    if (fixtures::corrupted_report(kind).count(kind) > 0) {
      ++flagged;
    } else {
      ok = false;
      d << "missed " << to_string(kind) << ", ";
    }
  }
  const GridSpec g = fixtures::grid();
  ok = ok && validate_single(fixtures::clean_single(), g).ok() &&
       validate_single(fixtures::clean_partner(), g).ok() &&
       validate_joint(fixtures::clean_joint()).ok();
  std::mt19937 rng(3);
  std::size_t clean = 0;
  for (int i = 0; i < 20; ++i) {
    const auto pair = testing::random_pair(rng);
    const ArrayCompileResult r = compile_on_array(pair, GridSpec::square(6, 6), Seconds(120));
    for (const auto& s : r.schedules) {
      ok = ok && validate_single(s, r.occupancy.grid()).ok();
    }
    if (r.ok()) {
      ok = ok && validate_joint(r.occupancy).ok();
      ++clean;
    }
  }
  d << flagged << "/" << kViolationKindCount << " kinds flagged, " << clean
    << " compiled workloads unflagged";
  return {ok, d.str()};
}

Outcome stage_reduction(const RandomRun& r) {
  const GridSpec g = GridSpec::square(6, 6);
  std::ostringstream d;
  bool ok = true;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<Circuit> cs;
    for (std::size_t i = 0; i < k; ++i) {
      cs.push_back(testing::disjoint_pairs("p" + std::to_string(i), 1));
    }
    const ArrayCompileResult joint = compile_on_array(cs, g, Seconds(120));
    const SequentialResult seq = compile_sequential(cs, g, Seconds(120));
    const std::size_t lj = joint.ok() ? joint.occupancy.stage_count() : 0;
    d << "k=" << k << ":" << lj << "/" << seq.total_stages << " ";
    ok = ok && joint.ok() && seq.ok() && lj == 1 && seq.total_stages == k;
  }
  d << "random worse-than-sequential " << r.worse;
  return {ok && r.worse == 0, d.str()};
}

void write_json_circuit(const fs::path& path, const Circuit& c) {
  std::ofstream out(path);
  out << "{\"name\":\"" << c.name() << "\",\"num_qubits\":" << c.num_qubits() << ",\"gates\":[";
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    out << (i ? "," : "") << "[" << c.gates()[i].qubits[0] << "," << c.gates()[i].qubits[1]
        << "]";
  }
  out << "]}\n";
}

Outcome time_limit_contract(const std::string& cli, const fs::path& work) {
  if (cli.empty()) {
    return {false, "no --cli given"};
  }
  const fs::path dir = work / "timeout_workload";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::mt19937 rng(11);
  write_json_circuit(dir / "a_small.json", testing::chain("small", 2));
  write_json_circuit(dir / "b_huge.json", testing::random_circuit(rng, "huge", 20, 400));
  const fs::path report = work / "timeout_report.csv";
  const std::string cmd = "\"" + cli + "\" compile --mode multi --arrays 2 --jobs 2 --grid 5x5 " +
                          "--time-limit 2 --circuits \"" + dir.string() + "\" --out \"" +
                          report.string() + "\" 2>/dev/null";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(report);
  const std::string csv((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const bool timeout_row = csv.find("timeout") != std::string::npos;
  std::ostringstream d;
  d << "exit " << code << " in " << format_fixed(wall) << " s, timeout row "
    << (timeout_row ? "present" : "missing");
  return {code == 2 && wall <= 2.4 && timeout_row, d.str()};
}

} // namespace

int main(int argc, char** argv) {
  std::string cli;
  fs::path work = fs::temp_directory_path() / "atomplex_acceptance";
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") {
      cli = argv[i + 1];
    } else if (flag == "--work") {
      work = argv[i + 1];
    } else {
      std::cerr << "usage: " << argv[0] << " [--cli PATH] [--work DIR]\n";
      return 1;
    }
  }
  fs::create_directories(work);

  int failures = 0;
  const auto report = [&](int id, const std::string& name, const std::function<Outcome()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " " << name << ": "
              << o.detail << " (" << format_fixed(s) << " s)" << std::endl;
  };

  report(1, "metric exactness", metric_exactness);
  report(2, "merge semantics", merge_semantics);
  report(3, "placer properties", placer_properties);
  report(4, "placer group check", placer_table_check);
  report(5, "encoder/oracle equivalence", oracle_equivalence);
  RandomRun pairs;
  report(6, "multiprogram soundness", [&] {
    pairs = random_pairs();
    return multiprogram_soundness(pairs);
  });
  report(7, "mutation completeness", mutation_completeness);
  report(8, "stage-reduction direction", [&] { return stage_reduction(pairs); });
  report(9, "time-limit contract", [&] { return time_limit_contract(cli, work); });
  return failures == 0 ? 0 : 1;
}
