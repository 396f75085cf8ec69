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
#include "atomplex/validator.hpp"
#include "fixtures.hpp"
#include "oracle/brute_force.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace atomplex {
namespace {

using fixtures::aod;
using fixtures::slm;

constexpr ViolationKind kAllKinds[] = {
    ViolationKind::GateNotColocated,     ViolationKind::ExclusivityBreach,
    ViolationKind::AODCrossing,          ViolationKind::SLMDrift,
    ViolationKind::DependencyOrder,      ViolationKind::CrossCircuitMovement,
    ViolationKind::CrossCircuitGateSite, ViolationKind::OutOfBounds,
};

TEST(Validator, CleanFixturesPass) {
  EXPECT_TRUE(oracle::schedule_valid(fixtures::clean_single(), fixtures::grid()));
  EXPECT_TRUE(validate_single(fixtures::clean_single(), fixtures::grid()).ok());
  EXPECT_TRUE(validate_single(fixtures::clean_partner(), fixtures::grid()).ok());
  const auto r = validate_joint(fixtures::clean_joint());
  EXPECT_TRUE(r.ok()) << r.to_json_lines();
}

TEST(Validator, EveryKindIsFlagged) {
  for (const ViolationKind k : kAllKinds) {
    const ViolationReport r = fixtures::corrupted_report(k);
    EXPECT_GT(r.count(k), 0u) << to_string(k) << "\n" << r.to_json_lines();
  }
}

TEST(Validator, SingleCorruptionsHitOnlyTheirKind) {
  for (const ViolationKind k :
       {ViolationKind::GateNotColocated, ViolationKind::ExclusivityBreach,
        ViolationKind::AODCrossing, ViolationKind::SLMDrift, ViolationKind::OutOfBounds}) {
    const ViolationReport r = fixtures::corrupted_report(k);
    EXPECT_EQ(r.count(k), r.violations.size()) << to_string(k) << "\n" << r.to_json_lines();
    EXPECT_FALSE(oracle::schedule_valid(fixtures::corrupt_single(k), fixtures::grid()));
  }
}

TEST(Validator, ColumnSwapIsOneCrossing) {
  CompiledSchedule s;
  s.circuit = "x";
  s.num_qubits = 2;
  s.initial = {aod(0, 0, 0, 0), aod(1, 1, 1, 1)};
  s.stages = {{aod(1, 0, 0, 0), aod(0, 1, 1, 1)}};
  const ViolationReport r = validate_single(s, GridSpec::square(2, 2));
  ASSERT_EQ(r.violations.size(), 1u) << r.to_json_lines();
  EXPECT_EQ(r.violations[0].kind, ViolationKind::AODCrossing);
  EXPECT_EQ(r.violations[0].stage, 0u);
  EXPECT_EQ(r.violations[0].entities, (std::vector<std::string>{"c0.q0", "c0.q1"}));
}

TEST(Validator, CollectsEveryViolation) {
  CompiledSchedule s = fixtures::clean_single();
  s.stages[0][0] = aod(0, 0, 0, 0);      // not co-located
  s.initial[2] = aod(3, 1, 2, 1);        // out of bounds
  const ViolationReport r = validate_single(s, fixtures::grid());
  EXPECT_GT(r.count(ViolationKind::GateNotColocated), 0u);
  EXPECT_GT(r.count(ViolationKind::OutOfBounds), 0u);
}

TEST(Validator, JsonLines) {
  const ViolationReport r = fixtures::corrupted_report(ViolationKind::DependencyOrder);
  std::istringstream in(r.to_json_lines());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("kind"));
    EXPECT_TRUE(j.contains("stage"));
    EXPECT_TRUE(j.contains("entities"));
    ++n;
  }
  EXPECT_EQ(n, r.violations.size());
}

TEST(Validator, JointOfOneEqualsSingle) {
  std::vector<CompiledSchedule> cases{fixtures::clean_single(), fixtures::clean_partner()};
  for (const ViolationKind k :
       {ViolationKind::GateNotColocated, ViolationKind::ExclusivityBreach,
        ViolationKind::AODCrossing, ViolationKind::DependencyOrder, ViolationKind::OutOfBounds}) {
    cases.push_back(fixtures::corrupt_single(k));
  }
  for (const auto& s : cases) {
    ArrayOccupancy occ(GridSpec::square(4, 4));
    occ = commit(occ, decompose_to_cycles(s));
    EXPECT_EQ(validate_joint(occ).to_json_lines(),
              validate_single(s, GridSpec::square(4, 4)).to_json_lines());
  }
}

TEST(Validator, MixedCircuitSiteCapacity) {
  // two atoms of one circuit park on (2,2); a third from another circuit joins
  CompiledSchedule c;
  c.circuit = "c";
  c.num_qubits = 3;
  c.initial = {slm(2, 2), aod(1, 2, 1, 2), aod(0, 1, 0, 1)};
  c.stages = {{slm(2, 2), aod(2, 2, 1, 2), aod(0, 1, 0, 1)}};
  ArrayOccupancy occ(fixtures::grid());
  occ = commit(occ, decompose_to_cycles(c));
  EXPECT_TRUE(validate_joint(occ).ok()) << validate_joint(occ).to_json_lines();
  CompiledSchedule e;
  e.circuit = "e";
  e.num_qubits = 1;
  e.initial = {aod(2, 0, 2, 0)};
  e.stages = {{aod(2, 2, 2, 0)}};
  const ArrayOccupancy bad = commit(occ, decompose_to_cycles(e));
  EXPECT_GT(validate_joint(bad).count(ViolationKind::ExclusivityBreach), 0u)
      << validate_joint(bad).to_json_lines();
}

TEST(StageCount, Examples) {
  EXPECT_EQ(stage_count(CompiledSchedule{}), 0u);
  EXPECT_EQ(stage_count(fixtures::clean_partner()), 1u);
  EXPECT_EQ(stage_count(fixtures::clean_single()), 2u);
  EXPECT_EQ(stage_count(fixtures::clean_joint()), 2u);
}

/// Perturbs one field of a schedule.
CompiledSchedule perturb(CompiledSchedule s, std::mt19937& rng, const GridSpec& g) {
  const std::size_t u = rng() % (s.stages.size() + 1);
  Layout& l = u == 0 ? s.initial : s.stages[u - 1];
  const auto q = rng() % s.num_qubits;
  const auto val = [&](int hi) { return static_cast<int>(rng() % (hi + 1)); };
  switch (rng() % 7) {
  case 0:
    l[q].site.x = val(g.x_sites);
    break;
  case 1:
    l[q].site.y = val(g.y_sites);
    break;
  case 2:
    l[q].aod = !l[q].aod;
    if (!l[q].aod) {
      l[q].col = l[q].row = 0;
    }
    break;
  case 3:
    if (l[q].aod) {
      l[q].col = val(g.aod_cols);
    }
    break;
  case 4:
    if (l[q].aod) {
      l[q].row = val(g.aod_rows);
    }
    break;
  default:
    if (!s.gates.empty()) {
      s.gate_stage[rng() % s.gates.size()] = val(static_cast<int>(s.stages.size())) - 1;
    }
  }
  return s;
}

TEST(Validator, RandomCorruptionsMatchIndependentCheck) {
  std::mt19937 rng(77);
  const GridSpec g = GridSpec::square(3, 3);
  std::vector<CompiledSchedule> clean;
  for (int i = 0; i < 12; ++i) {
    const Circuit c = testing::random_circuit(rng, "r", 2 + rng() % 3, 1 + rng() % 4);
    clean.push_back(solve_window(c, g, ArrayOccupancy(g), Seconds(60)));
    ASSERT_TRUE(validate_single(clean.back(), g).ok());
    ASSERT_TRUE(oracle::schedule_valid(clean.back(), g));
  }
  std::size_t broken = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const CompiledSchedule s = perturb(clean[rng() % clean.size()], rng, g);
    const bool valid = oracle::schedule_valid(s, g);
    const ViolationReport r = validate_single(s, g);
    ASSERT_EQ(r.ok(), valid) << trial << "\n" << r.to_json_lines();
    broken += !valid;
  }
  EXPECT_GT(broken, 1000u);
}

} // namespace
} // namespace atomplex
