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

#include "atomplex/errors.hpp"
#include "atomplex/metrics.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace atomplex {
namespace {

TEST(Rpr, Examples) {
  EXPECT_NEAR(rpr(26, 27), -3.70, 0.01);
  EXPECT_NEAR(rpr(22, 22), 0.0, 1e-12);
  for (int l = 1; l < 50; ++l) {
    EXPECT_EQ(rpr(l, l), 0.0);
  }
  EXPECT_THROW((void)rpr(3, 0), MetricError);
}

TEST(Rpr, SignFollowsComparison) {
  for (int a = 0; a < 30; ++a) {
    for (int b = 1; b < 30; ++b) {
      EXPECT_EQ(rpr(a, b) < 0, a < b);
    }
  }
}

TEST(Speedup, Examples) {
  EXPECT_NEAR(speedup(1.64, 21.33), 13.00, 0.01);
  EXPECT_NEAR(speedup(1.64, 1.50), 0.92, 0.01);
  EXPECT_DOUBLE_EQ(speedup(2.5, 2.5), 1.0);
  EXPECT_NEAR(speedup_literal(1.64, 21.33), 1.0 / 13.0, 0.001);
  EXPECT_THROW((void)speedup(0.0, 1.0), MetricError);
  EXPECT_THROW((void)speedup_literal(1.0, 0.0), MetricError);
}

TEST(Speedup, ReciprocalProduct) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> d(0.01, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = d(rng);
    const double y = d(rng);
    EXPECT_NEAR(speedup(x, y) * speedup(y, x), 1.0, 1e-12);
  }
}

TEST(FormatFixed, Rounding) {
  EXPECT_EQ(format_fixed(-3.7037), "-3.70");
  EXPECT_EQ(format_fixed(13.006), "13.01");
  EXPECT_EQ(format_fixed(-0.001), "0.00");
  EXPECT_EQ(format_fixed(2.0, 0), "2");
}

TEST(MetricRow, MakeAndCsv) {
  const MetricRow r = MetricRow::make("a/b", BaselineKind::Sequential, 26, 27, 1.64, 21.33);
  EXPECT_NEAR(r.rpr, -3.70, 0.01);
  EXPECT_NEAR(r.speedup, 13.00, 0.01);
  EXPECT_EQ(to_csv(r), "a/b,sequential,26,27,1.64,21.33,-3.70,13.01");
  EXPECT_EQ(metric_csv_header(),
            "workload,baseline,L_DYNAMO,L_baseline,T_DYNAMO,T_baseline,RPR,Speedup");
}

TEST(Deltas, Examples) {
  EXPECT_EQ(deltas({5, 8, 8}), (std::vector<std::size_t>{5, 3, 0}));
  EXPECT_EQ(deltas({}), (std::vector<std::size_t>{}));
  EXPECT_THROW((void)deltas({4, 3}), std::invalid_argument);
}

TEST(MergeCircuits, QubitPartition) {
  std::mt19937 rng(9);
  const std::vector<Circuit> cs{testing::random_circuit(rng, "qc1", 4, 6),
                                testing::random_circuit(rng, "qc2", 6, 6),
                                testing::random_circuit(rng, "qc3", 5, 6)};
  const Circuit m = merge_circuits(cs);
  EXPECT_EQ(m.num_qubits(), 15u);
  EXPECT_EQ(m.name(), "qc1+qc2+qc3");
  ASSERT_EQ(m.num_gates(), 18u);
  const std::vector<std::pair<QubitId, QubitId>> ranges{{0, 3}, {4, 9}, {10, 14}};
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 6; ++i) {
      const Gate& g = m.gates()[6 * k + i];
      const Gate& orig = cs[k].gates()[i];
      for (int side = 0; side < 2; ++side) {
        EXPECT_GE(g.qubits[side], ranges[k].first);
        EXPECT_LE(g.qubits[side], ranges[k].second);
        EXPECT_EQ(g.qubits[side] - ranges[k].first, orig.qubits[side]);
      }
    }
  }
}

TEST(MergeCircuits, SmallCases) {
  const Circuit one = testing::chain("c", 2);
  const Circuit same = merge_circuits({one});
  EXPECT_EQ(same.num_qubits(), 2u);
  EXPECT_EQ(same.num_gates(), 2u);
  const Circuit two = merge_circuits({testing::disjoint_pairs("a", 1), testing::disjoint_pairs("b", 1)});
  ASSERT_EQ(two.num_gates(), 2u);
  EXPECT_EQ(two.gates()[0].qubits, (std::array<QubitId, 2>{0, 1}));
  EXPECT_EQ(two.gates()[1].qubits, (std::array<QubitId, 2>{2, 3}));
  EXPECT_THROW((void)merge_circuits({}), std::invalid_argument);
}

TEST(Baselines, SequentialSumsStages) {
  const GridSpec g = GridSpec::square(3, 3);
  const auto one = compile_sequential({testing::chain("a", 3)}, g, Seconds(60));
  ASSERT_TRUE(one.ok());
  EXPECT_EQ(one.total_stages, 3u);
  EXPECT_DOUBLE_EQ(one.total_seconds, one.schedules[0].solve_seconds);

  const auto two = compile_sequential({testing::disjoint_pairs("a", 1), testing::disjoint_pairs("b", 1)},
                                      g, Seconds(60));
  EXPECT_EQ(two.total_stages, 2u);

  const auto three = compile_sequential(
      {testing::chain("a", 3), testing::chain("b", 4), testing::chain("c", 5)}, g, Seconds(60));
  ASSERT_TRUE(three.ok());
  EXPECT_EQ(three.total_stages, 12u);
}

TEST(Baselines, SequentialStopsAtFailure) {
  const GridSpec g = GridSpec::square(2, 2);
  const auto r = compile_sequential(
      {testing::chain("a", 1), testing::disjoint_pairs("big", 3), testing::chain("c", 1)}, g,
      Seconds(60));
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.schedules.size(), 1u);
  EXPECT_EQ(r.failure->circuit(), "big");
  EXPECT_EQ(r.total_stages, 1u);
}

TEST(Baselines, Merged) {
  const GridSpec g = GridSpec::square(3, 3);
  const auto single = compile_merged({testing::chain("a", 2)}, g, Seconds(60));
  ASSERT_TRUE(single.ok());
  EXPECT_EQ(single.stages, 2u);
  const auto pair =
      compile_merged({testing::disjoint_pairs("a", 1), testing::disjoint_pairs("b", 1)}, g, Seconds(60));
  ASSERT_TRUE(pair.ok());
  EXPECT_EQ(pair.stages, 1u);
  const auto big = compile_merged({testing::disjoint_pairs("a", 3), testing::disjoint_pairs("b", 3)},
                                  GridSpec::square(3, 3), Seconds(60));
  ASSERT_FALSE(big.ok());
  EXPECT_EQ(big.failure->kind(), CompileFailure::GridTooSmall);
}

TEST(DeltaAccounting, SumsToJointCount) {
  const GridSpec g = GridSpec::square(4, 4);
  std::mt19937 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Circuit> cs;
    for (int k = 0; k < 3; ++k) {
      cs.push_back(testing::random_circuit(rng, "c" + std::to_string(k), 2 + rng() % 3,
                                           1 + rng() % 4));
    }
    const auto run = compile_on_array(cs, g, Seconds(60));
    ASSERT_TRUE(run.ok());
    const auto rows = delta_stage_accounting(run);
    ASSERT_EQ(rows.size(), 3u);
    std::size_t total = 0;
    for (const auto& r : rows) {
      total += r.delta_stages;
      EXPECT_TRUE(r.ok);
    }
    EXPECT_EQ(total, run.occupancy.stage_count());
    EXPECT_EQ(rows[0].delta_stages, run.schedules[0].stage_count());
  }
}

TEST(DeltaAccounting, AbsorbedCircuitAddsNothing) {
  const GridSpec g = GridSpec::square(4, 4);
  const auto run = compile_on_array({testing::chain("long", 3), testing::disjoint_pairs("short", 1)},
                                    g, Seconds(60));
  ASSERT_TRUE(run.ok());
  const auto rows = delta_stage_accounting(run);
  EXPECT_EQ(rows[0].delta_stages, 3u);
  EXPECT_EQ(rows[1].delta_stages, 0u);
}

} // namespace
} // namespace atomplex
