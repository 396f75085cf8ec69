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
#include "atomplex/bench.hpp"
#include "atomplex/errors.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

namespace {

using atomplex::ConfigError;
using atomplex::ExperimentConfig;

int write_out(const std::filesystem::path& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return 1;
  }
  f << text;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-program compiler for neutral-atom arrays"};
  app.require_subcommand(1);

  // compile: the benchmark driver
  auto* compile = app.add_subcommand("compile", "Run a pairwise, grouped or multi-array experiment");
  std::string config_path;
  std::string mode;
  std::vector<std::string> circuits;
  std::size_t arrays = 0;
  std::size_t wmax = 0;
  std::string grid;
  double time_limit = 0;
  std::size_t window = 0;
  std::string strict;
  std::size_t jobs = 0;
  unsigned seed = 0;
  std::string out;
  bool deterministic = false;
  compile->add_option("--config", config_path, "JSON file with the same keys as the flags");
  auto* o_mode = compile->add_option("--mode", mode, "pairwise | grouped | multi");
  auto* o_circuits =
      compile->add_option("--circuits", circuits, "Circuit files or directories");
  auto* o_arrays = compile->add_option("--arrays", arrays, "Number of arrays (N)");
  auto* o_wmax = compile->add_option("--wmax", wmax, "Placer capacity per timestep");
  auto* o_grid = compile->add_option("--grid", grid, "Sites and AOD lines, XxY[:RxC]");
  auto* o_limit = compile->add_option("--time-limit", time_limit, "Seconds per compilation");
  auto* o_window = compile->add_option("--window", window, "Stages per greedy window");
  auto* o_strict = compile->add_option("--strict-exclusivity", strict, "on | off")
                       ->check(CLI::IsMember({"on", "off"}));
  auto* o_jobs = compile->add_option("--jobs", jobs, "Arrays compiled concurrently");
  auto* o_seed = compile->add_option("--seed", seed, "Solver seed");
  auto* o_out = compile->add_option("--out", out, "CSV report path (default stdout)");
  auto* o_det = compile->add_flag("--deterministic", deterministic,
                                  "Omit timings and run single-threaded");

  // sequence: one circuit on an empty array, as an execution sequence
  auto* single = app.add_subcommand("sequence", "Compile one circuit and print its cycles as JSON");
  std::string single_circuit;
  std::string single_grid = "6x6";
  double single_limit = 600;
  std::size_t single_window = 2;
  std::string single_out;
  single->add_option("circuit", single_circuit, "Circuit file")->required();
  single->add_option("--grid", single_grid, "Sites and AOD lines, XxY[:RxC]");
  single->add_option("--time-limit", single_limit, "Seconds");
  single->add_option("--window", single_window, "Stages per greedy window");
  single->add_option("--out", single_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*single) {
      const auto g = atomplex::GridSpec::parse(single_grid);
      const auto c = atomplex::load_circuit(single_circuit);
      atomplex::CompilerOptions opts;
      opts.window = single_window;
      try {
        const auto sched = atomplex::solve_window(c, g, atomplex::ArrayOccupancy(g),
                                                  atomplex::Seconds(single_limit), opts);
        nlohmann::json j = atomplex::to_json(atomplex::decompose_to_cycles(sched));
        j["summary"] = {{"circuit", sched.circuit},
                        {"stages", sched.stage_count()},
                        {"solve_seconds", sched.solve_seconds}};
        return write_out(single_out, j.dump(2) + "\n");
      } catch (const atomplex::CompileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
    }

    ExperimentConfig cfg;
    if (!config_path.empty()) {
      cfg = atomplex::load_config_file(config_path, cfg);
    }
    if (o_mode->count()) {
      cfg.mode = atomplex::parse_mode(mode);
    }
    if (o_circuits->count()) {
      cfg.circuits.assign(circuits.begin(), circuits.end());
    }
    if (o_arrays->count()) {
      cfg.num_arrays = arrays;
    }
    if (o_wmax->count()) {
      cfg.wmax = wmax;
    }
    if (o_grid->count()) {
      cfg.grid = atomplex::GridSpec::parse(grid);
    }
    if (o_limit->count()) {
      cfg.time_limit_seconds = time_limit;
    }
    if (o_window->count()) {
      cfg.compiler.window = window;
    }
    if (o_strict->count()) {
      cfg.compiler.strict_exclusivity = strict == "on";
    }
    if (o_jobs->count()) {
      cfg.jobs = jobs;
    }
    if (o_seed->count()) {
      cfg.compiler.seed = seed;
    }
    if (o_out->count()) {
      cfg.out = out;
    }
    if (o_det->count()) {
      cfg.deterministic = deterministic;
    }
    cfg.validate();
    const auto workload = atomplex::load_workload(cfg);
    const atomplex::BenchReport report = atomplex::run(cfg, workload);
    if (write_out(cfg.out, report.to_csv()) != 0) {
      return 1;
    }
    return report.partial ? 2 : 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
  } catch (const atomplex::UnplaceableError& e) {
    std::cerr << "config error: " << e.what() << "\n";
  } catch (const atomplex::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
