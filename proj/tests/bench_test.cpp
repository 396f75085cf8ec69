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
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace atomplex {
namespace {

const std::filesystem::path kDemo = ATOMPLEX_DATA_DIR "/circuits/demo";

ExperimentConfig small_config(Mode mode) {
  ExperimentConfig cfg;
  cfg.mode = mode;
  cfg.circuits = {kDemo};
  cfg.grid = GridSpec::square(4, 4);
  cfg.time_limit_seconds = 60;
  cfg.deterministic = true;
  return cfg;
}

std::vector<Circuit> one_gate_circuits(std::size_t k) {
  std::vector<Circuit> out;
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(testing::disjoint_pairs("p" + std::to_string(i), 1));
  }
  return out;
}

TEST(Config, ParseMode) {
  EXPECT_EQ(parse_mode("pairwise"), Mode::Pairwise);
  EXPECT_EQ(parse_mode("grouped"), Mode::Grouped);
  EXPECT_EQ(parse_mode("multi"), Mode::Multi);
  EXPECT_EQ(parse_mode("multi-resource"), Mode::Multi);
  EXPECT_THROW((void)parse_mode("solo"), ConfigError);
}

TEST(Config, FromJson) {
  const auto cfg = config_from_json(nlohmann::json::parse(R"({
      "mode": "multi", "circuits": ["a", "b"], "arrays": 3, "wmax": 4,
      "grid": "5x4:2x3", "time_limit": 2.5, "window": 3,
      "strict_exclusivity": "off", "jobs": 2, "seed": 9, "out": "r.csv",
      "deterministic": true})"));
  EXPECT_EQ(cfg.mode, Mode::Multi);
  EXPECT_EQ(cfg.circuits.size(), 2u);
  EXPECT_EQ(cfg.num_arrays, 3u);
  EXPECT_EQ(cfg.capacity(), 4u);
  EXPECT_EQ(cfg.grid, (GridSpec{5, 4, 2, 3}));
  EXPECT_DOUBLE_EQ(cfg.time_limit_seconds, 2.5);
  EXPECT_EQ(cfg.compiler.window, 3u);
  EXPECT_FALSE(cfg.compiler.strict_exclusivity);
  EXPECT_EQ(cfg.jobs, 2u);
  EXPECT_EQ(cfg.compiler.seed, 9u);
  EXPECT_EQ(cfg.out, "r.csv");
  EXPECT_TRUE(cfg.deterministic);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, Defaults) {
  const ExperimentConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.time_limit_seconds, 10000.0);
  EXPECT_EQ(cfg.compiler.window, 2u);
  EXPECT_TRUE(cfg.compiler.strict_exclusivity);
  EXPECT_EQ(cfg.capacity(), 18u);
  EXPECT_EQ(cfg.jobs, 1u);
}

TEST(Config, Errors) {
  EXPECT_THROW((void)config_from_json(nlohmann::json::parse(R"({"colour": 1})")), ConfigError);
  EXPECT_THROW((void)config_from_json(nlohmann::json::parse(R"({"arrays": 0})")), ConfigError);
  EXPECT_THROW((void)config_from_json(nlohmann::json::parse(R"({"time_limit": -1})")),
               ConfigError);
  EXPECT_THROW((void)config_from_json(nlohmann::json::parse(R"({"grid": "4by4"})")),
               ConfigError);
  EXPECT_THROW((void)config_from_json(nlohmann::json::parse("[1]")), ConfigError);
  ExperimentConfig cfg;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.circuits = {"x"};
  cfg.mode = Mode::Multi;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.num_arrays = 2;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_THROW((void)load_config_file("/nonexistent/config.json"), ConfigError);
}

TEST(Config, FileOverridesBase) {
  const auto path = std::filesystem::temp_directory_path() / "atomplex_cfg_test.json";
  {
    std::ofstream(path) << R"({"mode": "grouped", "window": 4})";
  }
  ExperimentConfig base;
  base.jobs = 3;
  const auto cfg = load_config_file(path, base);
  EXPECT_EQ(cfg.mode, Mode::Grouped);
  EXPECT_EQ(cfg.compiler.window, 4u);
  EXPECT_EQ(cfg.jobs, 3u);
  std::filesystem::remove(path);
}

TEST(Workload, LoadsDirectorySorted) {
  const auto cs = load_workload(small_config(Mode::Grouped));
  ASSERT_EQ(cs.size(), 4u);
  EXPECT_EQ(cs[0].name(), "ghz_5");
  EXPECT_EQ(cs[1].name(), "ladder_6");
  EXPECT_EQ(cs[2].name(), "pairs_4");
  EXPECT_EQ(cs[3].name(), "ring_4");
}

TEST(Workload, Errors) {
  ExperimentConfig cfg = small_config(Mode::Grouped);
  cfg.grid = GridSpec::square(2, 2);
  try {
    (void)load_workload(cfg);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("ghz_5"), std::string::npos);
  }
  cfg.circuits = {kDemo / "missing.qasm"};
  EXPECT_THROW((void)load_workload(cfg), ConfigError);
}

TEST(Pairwise, RowCounts) {
  ExperimentConfig cfg = small_config(Mode::Pairwise);
  EXPECT_EQ(run_pairwise(cfg, one_gate_circuits(2)).rows.size(), 1u);
  const BenchReport r = run_pairwise(cfg, one_gate_circuits(7));
  EXPECT_EQ(r.rows.size(), 21u);
  EXPECT_FALSE(r.partial);
  EXPECT_THROW((void)run_pairwise(cfg, one_gate_circuits(1)), ConfigError);
  EXPECT_EQ(r.header.front(), "C_map");
  EXPECT_EQ(r.header.size(), r.rows.front().size());
}

TEST(Pairwise, DeeperCircuitIsMapped) {
  ExperimentConfig cfg = small_config(Mode::Pairwise);
  const BenchReport r =
      run_pairwise(cfg, {testing::disjoint_pairs("shallow", 1), testing::chain("deep", 3)});
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0][0], "deep");
  EXPECT_EQ(r.rows[0][1], "shallow");
  EXPECT_EQ(r.rows[0][2], "3");
  EXPECT_EQ(r.rows[0][9], "3");  // L_DYNAMO
  EXPECT_EQ(r.rows[0][11], "4"); // sequential total
  EXPECT_EQ(r.rows[0].back(), "ok");
}

TEST(Grouped, DisjointGatesShareOneStage) {
  ExperimentConfig cfg = small_config(Mode::Grouped);
  const BenchReport r = run_grouped(cfg, one_gate_circuits(3));
  ASSERT_EQ(r.rows.size(), 4u);
  const auto& sum = r.rows.back();
  EXPECT_EQ(sum[0], "Sum");
  EXPECT_EQ(sum[3], "1");
  EXPECT_EQ(sum[5], "3");
  EXPECT_EQ(sum.back(), "ok");
}

TEST(Grouped, SingleCircuitDeltaIsItsLength) {
  ExperimentConfig cfg = small_config(Mode::Grouped);
  const BenchReport r = run_grouped(cfg, {testing::chain("c", 2)});
  EXPECT_EQ(r.rows[0][3], "2");
  EXPECT_EQ(r.rows[0][5], "2");
  EXPECT_EQ(r.rows[0][7], "0.00");
  EXPECT_EQ(r.rows[0][8], "-");
}

TEST(Grouped, DeterministicReportsAreIdentical) {
  ExperimentConfig cfg = small_config(Mode::Grouped);
  const auto cs = load_workload(cfg);
  EXPECT_EQ(run(cfg, cs).to_csv(), run(cfg, cs).to_csv());
}

TEST(Multi, OneCircuitPerArray) {
  ExperimentConfig cfg = small_config(Mode::Multi);
  cfg.num_arrays = 3;
  cfg.jobs = 3;
  cfg.deterministic = false;
  const std::vector<Circuit> cs{testing::chain("a", 2), testing::chain("b", 1),
                                testing::chain("c", 3)};
  const BenchReport r = run_multiresource(cfg, cs);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.rows[0][1], "b");
  EXPECT_EQ(r.rows[0][4], "1");
  EXPECT_EQ(r.rows[2][1], "a");
  EXPECT_EQ(r.rows[2][4], "2");
  EXPECT_EQ(r.rows[4][1], "c");
  EXPECT_EQ(r.rows[4][4], "3");
  EXPECT_FALSE(r.partial);
  cfg.num_arrays = 1;
  EXPECT_THROW((void)run_multiresource(cfg, cs), ConfigError);
}

TEST(Multi, TimeoutIsRecorded) {
  ExperimentConfig cfg = small_config(Mode::Multi);
  cfg.num_arrays = 2;
  cfg.grid = GridSpec::square(5, 5);
  cfg.time_limit_seconds = 1;
  std::mt19937 rng(5);
  const std::vector<Circuit> cs{testing::chain("small", 1),
                                testing::random_circuit(rng, "huge", 20, 400)};
  const BenchReport r = run_multiresource(cfg, cs);
  EXPECT_TRUE(r.partial);
  bool saw = false;
  for (const auto& row : r.rows) {
    saw = saw || row.back() == "DYNAMO:timeout";
  }
  EXPECT_TRUE(saw) << r.to_csv();
}

} // namespace
} // namespace atomplex
