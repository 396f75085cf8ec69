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

#include "atomplex/bench.hpp"

#include "atomplex/errors.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace atomplex {

const char* to_string(Mode m) {
  switch (m) {
  case Mode::Pairwise:
    return "pairwise";
  case Mode::Grouped:
    return "grouped";
  case Mode::Multi:
    return "multi";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  if (text == "pairwise") {
    return Mode::Pairwise;
  }
  if (text == "grouped") {
    return Mode::Grouped;
  }
  if (text == "multi" || text == "multi-resource") {
    return Mode::Multi;
  }
  throw ConfigError("unknown mode '" + text + "' (pairwise, grouped or multi)");
}

std::size_t ExperimentConfig::capacity() const {
  return wmax ? *wmax : std::max<std::size_t>(1, static_cast<std::size_t>(grid.site_count()) / 2);
}

void ExperimentConfig::validate() const {
  if (circuits.empty()) {
    throw ConfigError("no circuits given");
  }
  if (num_arrays == 0) {
    throw ConfigError("at least one array is required");
  }
  if (mode == Mode::Multi && num_arrays < 2) {
    throw ConfigError("multi mode needs at least two arrays");
  }
  if (wmax && *wmax == 0) {
    throw ConfigError("wmax must be positive");
  }
  if (!(time_limit_seconds > 0)) {
    throw ConfigError("time limit must be positive");
  }
  if (compiler.window == 0) {
    throw ConfigError("window must be at least one stage");
  }
  if (jobs == 0) {
    throw ConfigError("jobs must be at least one");
  }
}

namespace {

bool parse_switch(const nlohmann::json& v, const std::string& key) {
  if (v.is_boolean()) {
    return v.get<bool>();
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "on" || s == "true") {
      return true;
    }
    if (s == "off" || s == "false") {
      return false;
    }
  }
  throw ConfigError("'" + key + "' must be on or off");
}

template <typename T>
T positive(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) {
    throw ConfigError("'" + key + "' must be a number");
  }
  const double d = v.get<double>();
  if (!(d > 0)) {
    throw ConfigError("'" + key + "' must be positive");
  }
  return v.get<T>();
}

} // namespace

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig cfg) {
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "mode") {
      cfg.mode = parse_mode(v.get<std::string>());
    } else if (key == "circuits") {
      cfg.circuits.clear();
      if (v.is_string()) {
        cfg.circuits.emplace_back(v.get<std::string>());
      } else {
        for (const auto& p : v) {
          cfg.circuits.emplace_back(p.get<std::string>());
        }
      }
    } else if (key == "arrays") {
      cfg.num_arrays = positive<std::size_t>(v, key);
    } else if (key == "wmax") {
      cfg.wmax = positive<std::size_t>(v, key);
    } else if (key == "grid") {
      cfg.grid = GridSpec::parse(v.get<std::string>());
    } else if (key == "time_limit") {
      cfg.time_limit_seconds = positive<double>(v, key);
    } else if (key == "window") {
      cfg.compiler.window = positive<std::size_t>(v, key);
    } else if (key == "strict_exclusivity") {
      cfg.compiler.strict_exclusivity = parse_switch(v, key);
    } else if (key == "jobs") {
      cfg.jobs = positive<std::size_t>(v, key);
    } else if (key == "seed") {
      cfg.compiler.seed = v.get<unsigned>();
    } else if (key == "out") {
      cfg.out = v.get<std::string>();
    } else if (key == "deterministic") {
      cfg.deterministic = parse_switch(v, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config " + path.string());
  }
  try {
    return config_from_json(nlohmann::json::parse(in), std::move(base));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<Circuit> load_workload(const ExperimentConfig& cfg) {
  std::vector<std::filesystem::path> files;
  for (const auto& p : cfg.circuits) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> found;
      for (const auto& e : std::filesystem::directory_iterator(p)) {
        const auto ext = e.path().extension();
        if (e.is_regular_file() && (ext == ".qasm" || ext == ".json")) {
          found.push_back(e.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (std::filesystem::exists(p)) {
      files.push_back(p);
    } else {
      throw ConfigError("no such circuit file or directory: " + p.string());
    }
  }
  std::vector<Circuit> out;
  for (const auto& f : files) {
    try {
      out.push_back(load_circuit(f));
    } catch (const std::exception& e) {
      throw ConfigError(f.string() + ": " + e.what());
    }
    const Circuit& c = out.back();
    if (c.num_qubits() > static_cast<std::size_t>(cfg.grid.site_count())) {
      throw ConfigError("circuit '" + c.name() + "' has " + std::to_string(c.num_qubits()) +
                        " qubits but grid " + cfg.grid.to_string() + " has only " +
                        std::to_string(cfg.grid.site_count()) + " sites");
    }
  }
  return out;
}

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) {
    line(r);
  }
  return out.str();
}

namespace {

constexpr const char* kNone = "-";

class Cells {
public:
  explicit Cells(bool deterministic) : deterministic_(deterministic) {}

  [[nodiscard]] std::string time(double s) const {
    return deterministic_ ? kNone : format_fixed(s);
  }
  [[nodiscard]] std::string ratio(double v) const { return format_fixed(v); }
  [[nodiscard]] std::string speedup(double t_dynamo, double t_baseline) const {
    if (deterministic_) {
      return kNone;
    }
    try {
      return format_fixed(atomplex::speedup(t_dynamo, t_baseline));
    } catch (const MetricError&) {
      return kNone;
    }
  }
  [[nodiscard]] static std::string rpr(std::size_t l, std::size_t base) {
    try {
      return format_fixed(atomplex::rpr(static_cast<double>(l), static_cast<double>(base)));
    } catch (const MetricError&) {
      return kNone;
    }
  }

private:
  bool deterministic_;
};

std::string join_status(const std::vector<std::string>& parts) {
  if (parts.empty()) {
    return "ok";
  }
  std::string s;
  for (const auto& p : parts) {
    s += (s.empty() ? "" : ";") + p;
  }
  return s;
}

PlacementRequest request_for(const ExperimentConfig& cfg, const std::vector<Circuit>& circuits,
                             std::size_t arrays) {
  PlacementRequest req;
  req.num_arrays = arrays;
  req.capacity = cfg.capacity();
  for (const Circuit& c : circuits) {
    req.circuits.push_back(layer_dag(c));
  }
  return req;
}

/// Placer order of `circuits` on a single array.
std::vector<Circuit> single_array_order(const ExperimentConfig& cfg,
                                        const std::vector<Circuit>& circuits) {
  const Placement p = schedule_all(request_for(cfg, circuits, 1));
  std::vector<Circuit> out;
  for (const std::size_t i : p.order(0)) {
    out.push_back(circuits[i]);
  }
  return out;
}

Seconds budget(const ExperimentConfig& cfg) { return Seconds(cfg.time_limit_seconds); }

} // namespace

BenchReport run_pairwise(const ExperimentConfig& cfg, const std::vector<Circuit>& circuits) {
  if (circuits.size() < 2) {
    throw ConfigError("pairwise mode needs at least two circuits");
  }
  BenchReport rep;
  rep.header = {"C_map",     "C_space",   "Depth_map", "Depth_space", "T_DYNAMO",
                "T_DPQA_c",  "T_DPQA_s",  "Speedup_c", "Speedup_s",   "L_DYNAMO",
                "L_DPQA_c",  "L_DPQA_s",  "RPR_c",     "RPR_s",       "status"};
  const Cells cells(cfg.deterministic);
  std::vector<std::size_t> depth;
  for (const Circuit& c : circuits) {
    depth.push_back(dag_depth(c));
  }
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    for (std::size_t j = i + 1; j < circuits.size(); ++j) {
      const std::size_t map = depth[i] >= depth[j] ? i : j;
      const std::size_t space = map == i ? j : i;
      const std::vector<Circuit> pair{circuits[map], circuits[space]};

      const ArrayCompileResult dyn = compile_on_array(single_array_order(cfg, pair), cfg.grid,
                                                      budget(cfg), cfg.compiler);
      const MergedResult merged = compile_merged(pair, cfg.grid, budget(cfg), cfg.compiler);
      const SequentialResult seq = compile_sequential(pair, cfg.grid, budget(cfg), cfg.compiler);

      std::vector<std::string> status;
      double t_dyn = 0.0;
      for (const CircuitOutcome& o : dyn.outcomes) {
        t_dyn += o.seconds;
        if (!o.ok()) {
          status.push_back(std::string("DYNAMO:") + to_string(*o.failure));
        }
      }
      if (!merged.ok()) {
        status.push_back(std::string("DPQA_c:") + to_string(merged.failure->kind()));
      }
      if (!seq.ok()) {
        status.push_back(std::string("DPQA_s:") + to_string(seq.failure->kind()));
      }
      const std::size_t l_dyn = dyn.occupancy.stage_count();
      rep.partial = rep.partial || !status.empty();
      rep.rows.push_back({
          circuits[map].name(),
          circuits[space].name(),
          std::to_string(depth[map]),
          std::to_string(depth[space]),
          cells.time(t_dyn),
          cells.time(merged.seconds),
          cells.time(seq.total_seconds),
          dyn.ok() && merged.ok() ? cells.speedup(t_dyn, merged.seconds) : kNone,
          dyn.ok() && seq.ok() ? cells.speedup(t_dyn, seq.total_seconds) : kNone,
          dyn.ok() ? std::to_string(l_dyn) : kNone,
          merged.ok() ? std::to_string(merged.stages) : kNone,
          seq.ok() ? std::to_string(seq.total_stages) : kNone,
          dyn.ok() && merged.ok() ? Cells::rpr(l_dyn, merged.stages) : kNone,
          dyn.ok() && seq.ok() ? Cells::rpr(l_dyn, seq.total_stages) : kNone,
          join_status(status),
      });
    }
  }
  return rep;
}

BenchReport run_grouped(const ExperimentConfig& cfg, const std::vector<Circuit>& circuits) {
  if (circuits.empty()) {
    throw ConfigError("grouped mode needs at least one circuit");
  }
  BenchReport rep;
  rep.header = {"Circuit",  "Depth",    "Qubits", "DeltaL_DYNAMO", "DeltaT_DYNAMO",
                "L_DPQA_s", "T_DPQA_s", "RPR_s",  "Speedup_s",     "status"};
  const Cells cells(cfg.deterministic);
  const std::vector<Circuit> order = single_array_order(cfg, circuits);
  const ArrayCompileResult dyn =
      compile_on_array(order, cfg.grid, budget(cfg), cfg.compiler, true);

  std::size_t sum_dl = 0;
  double sum_dt = 0.0;
  std::size_t sum_ls = 0;
  double sum_ts = 0.0;
  bool all_ok = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const CircuitOutcome& o = dyn.outcomes[i];
    std::vector<std::string> status;
    if (!o.ok()) {
      status.push_back(std::string("DYNAMO:") + to_string(*o.failure));
    }
    std::string ls = kNone;
    std::string ts = kNone;
    std::string r = kNone;
    std::string sp = kNone;
    try {
      const CompiledSchedule s =
          solve_window(order[i], cfg.grid, ArrayOccupancy(cfg.grid), budget(cfg), cfg.compiler);
      sum_ls += s.stage_count();
      sum_ts += s.solve_seconds;
      ls = std::to_string(s.stage_count());
      ts = cells.time(s.solve_seconds);
      if (o.ok()) {
        r = Cells::rpr(o.delta_stages(), s.stage_count());
        sp = cells.speedup(o.seconds, s.solve_seconds);
      }
    } catch (const CompileError& e) {
      status.push_back(std::string("DPQA_s:") + to_string(e.kind()));
    }
    sum_dl += o.delta_stages();
    sum_dt += o.seconds;
    all_ok = all_ok && status.empty();
    rep.rows.push_back({order[i].name(), std::to_string(dag_depth(order[i])),
                        std::to_string(order[i].num_qubits()),
                        o.ok() ? std::to_string(o.delta_stages()) : kNone, cells.time(o.seconds),
                        ls, ts, r, sp, join_status(status)});
  }
  rep.partial = !all_ok;
  rep.rows.push_back({"Sum", "", "", std::to_string(sum_dl), cells.time(sum_dt),
                      std::to_string(sum_ls), cells.time(sum_ts),
                      all_ok ? Cells::rpr(sum_dl, sum_ls) : kNone,
                      all_ok ? cells.speedup(sum_dt, sum_ts) : kNone,
                      all_ok ? "ok" : "partial"});
  return rep;
}

BenchReport run_multiresource(const ExperimentConfig& cfg, const std::vector<Circuit>& circuits) {
  if (cfg.num_arrays < 2) {
    throw ConfigError("multi mode needs at least two arrays");
  }
  const PlacementRequest req = request_for(cfg, circuits, cfg.num_arrays);
  const Placement placement = schedule_all(req);

  std::vector<ArrayCompileResult> results(cfg.num_arrays);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t a = next++; a < cfg.num_arrays; a = next++) {
      std::vector<Circuit> order;
      for (const std::size_t i : placement.order(a)) {
        order.push_back(circuits[i]);
      }
      results[a] = compile_on_array(order, cfg.grid, budget(cfg), cfg.compiler, true);
    }
  };
  const std::size_t threads =
      cfg.deterministic ? 1 : std::min(cfg.jobs, cfg.num_arrays);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  BenchReport rep;
  rep.header = {"QPU", "Circuit", "Start", "Depth", "DeltaL", "DeltaT", "status"};
  const Cells cells(cfg.deterministic);
  for (std::size_t a = 0; a < cfg.num_arrays; ++a) {
    const auto ids = placement.order(a);
    const auto& assigned = placement.timelines[a].assigned();
    std::size_t sum_dl = 0;
    double sum_dt = 0.0;
    bool ok = true;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const CircuitOutcome& o = results[a].outcomes[k];
      sum_dl += o.delta_stages();
      sum_dt += o.seconds;
      ok = ok && o.ok();
      rep.rows.push_back({"QPU" + std::to_string(a), circuits[ids[k]].name(),
                          std::to_string(assigned[k].start),
                          std::to_string(req.circuits[ids[k]].length()),
                          o.ok() ? std::to_string(o.delta_stages()) : kNone,
                          cells.time(o.seconds),
                          o.ok() ? "ok" : std::string("DYNAMO:") + to_string(*o.failure)});
    }
    rep.partial = rep.partial || !ok;
    rep.rows.push_back({"QPU" + std::to_string(a), "Sum", "", "", std::to_string(sum_dl),
                        cells.time(sum_dt), ok ? "ok" : "partial"});
  }
  return rep;
}

BenchReport run(const ExperimentConfig& cfg, const std::vector<Circuit>& circuits) {
  switch (cfg.mode) {
  case Mode::Pairwise:
    return run_pairwise(cfg, circuits);
  case Mode::Grouped:
    return run_grouped(cfg, circuits);
  case Mode::Multi:
    return run_multiresource(cfg, circuits);
  }
  throw ConfigError("unknown mode");
}

} // namespace atomplex
