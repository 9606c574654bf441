// Copyright 2026 The fpcoord Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fpcoord/repeated_game.h"

#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "fpcoord/learner.h"

namespace fpcoord {
namespace {

std::string Dump(const RepeatedGameTrace& trace) {
  std::ostringstream out;
  WriteRepeatedGameJsonl(trace, out);
  return out.str();
}

TEST(LearnerSpecJson, RoundTripAndErrors) {
  const auto spec = LearnerSpecFromJson(nlohmann::json::parse(R"({
    "type": "ekf_fp", "tau": 1.5, "xi_diag": [0.1, 0.2], "z_diag": 0.4,
    "d_base": 0.2, "d_scale": 0.0, "noise_var": 0.5,
    "obs_noise_schedule": "constant_Z", "tie_break": "first", "seed": 12,
    "update_mode": "closed_form"})"));
  EXPECT_EQ(spec.ekf.tau, 1.5);
  EXPECT_EQ(spec.ekf.xi_diag, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(spec.ekf.obs_noise_schedule, ObsNoiseSchedule::kConstantZ);
  EXPECT_EQ(spec.update_mode, EkfUpdateMode::kClosedForm);
  EXPECT_EQ(spec.seed, 12u);
  const auto back = LearnerSpecFromJson(LearnerSpecToJson(spec));
  EXPECT_EQ(LearnerSpecToJson(back), LearnerSpecToJson(spec));

  try {
    LearnerSpecFromJson(nlohmann::json::parse(R"({"tau": -1})"));
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("'tau'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(LearnerSpecFromJson(nlohmann::json::parse(R"({"type": "q"})")), std::invalid_argument);
  EXPECT_THROW(LearnerSpecFromJson(nlohmann::json::parse(R"({"bogus": 1})")), std::invalid_argument);
}

TEST(RepeatedGame, EkfRunsAreBitIdenticalPerSeed) {
  const std::vector<LearnerSpec> specs(2);
  for (std::uint64_t seed : {0u, 7u, 123456u}) {
    EXPECT_EQ(Dump(RunRepeatedGame(MakeTcasGame(2), specs, 100, seed)),
              Dump(RunRepeatedGame(MakeTcasGame(2), specs, 100, seed)));
  }
  EXPECT_NE(Dump(RunRepeatedGame(MakeTcasGame(2), specs, 100, 1)),
            Dump(RunRepeatedGame(MakeTcasGame(2), specs, 100, 2)));
}

TEST(RepeatedGame, ClassicFpCycleEarnsNothing) {
  LearnerSpec fp;
  fp.type = LearnerType::kFictitiousPlay;
  fp.tie_break = TieBreak::kFirst;
  fp.kappa0 = std::vector<double>{1, 1};
  const std::vector<LearnerSpec> specs = {fp, fp};
  const auto trace = RunRepeatedGame(MakeTcasGame(2), specs, 100, 0);
  for (const auto& r : trace.records) {
    EXPECT_EQ(r.actions[0], r.actions[1]);
    EXPECT_EQ(r.rewards[0], 0.0);
  }
  EXPECT_EQ(FirstCoordinatedIteration(trace), -1);
}

TEST(RepeatedGame, FixedSplitCoordinatesImmediately) {
  LearnerSpec high, low;
  high.type = low.type = LearnerType::kFixed;
  low.fixed_action = 1;
  const std::vector<LearnerSpec> specs = {high, low};
  const auto trace = RunRepeatedGame(MakeTcasGame(2), specs, 30, 0);
  EXPECT_EQ(FirstCoordinatedIteration(trace), 1);
  EXPECT_TRUE(ReachesCoordination(trace, 20, 20));
  EXPECT_FALSE(ReachesCoordination(trace, 20, 19));
}

TEST(RepeatedGame, ClosedFormModeKeepsValidBeliefs) {
  LearnerSpec spec;
  spec.update_mode = EkfUpdateMode::kClosedForm;
  const std::vector<LearnerSpec> specs = {spec, spec};
  const auto trace = RunRepeatedGame(MakeTcasGame(2), specs, 200, 5);
  for (const auto& r : trace.records) {
    for (const auto& b : r.beliefs) {
      ASSERT_EQ(b.strategy.size(), 2u);
      EXPECT_NEAR(b.strategy[0] + b.strategy[1], 1.0, 1e-9);
      EXPECT_LE(std::abs(b.cov[0][1] - b.cov[1][0]), 1e-9);
    }
  }
}

TEST(RepeatedGame, SummaryLineIsLast) {
  const std::vector<LearnerSpec> specs(2);
  std::istringstream in(Dump(RunRepeatedGame(MakeTcasGame(2), specs, 10, 3)));
  std::string line, last;
  int count = 0;
  while (std::getline(in, line)) {
    last = line;
    ++count;
  }
  EXPECT_EQ(count, 11);
  EXPECT_EQ(nlohmann::json::parse(last)["kind"], "summary");
}

}  // namespace
}  // namespace fpcoord
