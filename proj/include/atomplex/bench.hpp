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

#include "atomplex/compiler.hpp"
#include "atomplex/metrics.hpp"
#include "atomplex/placer.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace atomplex {

enum class Mode { Pairwise, Grouped, Multi };

[[nodiscard]] const char* to_string(Mode m);
/// Throws ConfigError.
[[nodiscard]] Mode parse_mode(const std::string& text);

struct ExperimentConfig {
  Mode mode = Mode::Pairwise;
  /// Circuit files, or directories scanned for .qasm/.json files.
  std::vector<std::filesystem::path> circuits;
  std::size_t num_arrays = 1;
  /// Placer capacity; defaults to half the site count.
  std::optional<std::size_t> wmax;
  GridSpec grid = GridSpec::square(6, 6);
  double time_limit_seconds = 10000.0;
  CompilerOptions compiler;
  std::size_t jobs = 1;
  /// Timing columns are written as "-" and arrays compile on one thread, so
  /// reports are byte-identical between runs.
  bool deterministic = false;
  std::filesystem::path out;

  [[nodiscard]] std::size_t capacity() const;
  /// Throws ConfigError on an invalid combination of settings.
  void validate() const;
};

/// Reads the keys of the command line (mode, circuits, arrays, wmax, grid,
/// time_limit, window, strict_exclusivity, jobs, seed, out, deterministic)
/// on top of `base`. Throws ConfigError.
[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json& j,
                                                ExperimentConfig base = {});
[[nodiscard]] ExperimentConfig load_config_file(const std::filesystem::path& path,
                                                ExperimentConfig base = {});

/// Loads every configured circuit in path order (directory entries sorted by
/// name). Throws ConfigError when a path is missing, a file fails to parse,
/// or a circuit has more qubits than the grid has sites.
[[nodiscard]] std::vector<Circuit> load_workload(const ExperimentConfig& cfg);

struct BenchReport {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Some compilation timed out or failed.
  bool partial = false;

  [[nodiscard]] std::string to_csv() const;
};

/// Every unordered pair on one array against both baselines.
[[nodiscard]] BenchReport run_pairwise(const ExperimentConfig& cfg,
                                       const std::vector<Circuit>& circuits);
/// The whole group on one array, with per-circuit stage increments and the
/// sequential baseline.
[[nodiscard]] BenchReport run_grouped(const ExperimentConfig& cfg,
                                      const std::vector<Circuit>& circuits);
/// Placement over several arrays, then one compile per array.
[[nodiscard]] BenchReport run_multiresource(const ExperimentConfig& cfg,
                                            const std::vector<Circuit>& circuits);

[[nodiscard]] BenchReport run(const ExperimentConfig& cfg, const std::vector<Circuit>& circuits);

} // namespace atomplex
