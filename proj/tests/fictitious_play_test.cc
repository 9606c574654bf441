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

#include "fpcoord/fictitious_play.h"

#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "fpcoord/learner.h"
#include "fpcoord/repeated_game.h"

namespace fpcoord {
namespace {

TEST(FpUpdate, Examples) {
  EXPECT_EQ(FpUpdate(FictitiousPlayBelief({1, 1}), {ActionId{0}}).kappa(), (std::vector<double>{2, 1}));
  EXPECT_EQ(FpUpdate(FictitiousPlayBelief({0.5, 2.5}), {ActionId{1}}).kappa(),
            (std::vector<double>{0.5, 3.5}));
  auto twice = FpUpdate(FpUpdate(FictitiousPlayBelief({1, 1}), {ActionId{0}}), {ActionId{0}});
  EXPECT_EQ(twice.kappa(), (std::vector<double>{3, 1}));
  EXPECT_THROW(FpUpdate(FictitiousPlayBelief({1, 1}), {ActionId{2}}), std::out_of_range);
  EXPECT_THROW(FictitiousPlayBelief({-1, 1}), std::invalid_argument);
}

TEST(FpStrategy, Examples) {
  const auto s = FpStrategy(FictitiousPlayBelief({2, 1}));
  EXPECT_DOUBLE_EQ(s[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(FpStrategy(FictitiousPlayBelief({5, 5}))[1], 0.5);
  EXPECT_EQ(FpStrategy(FictitiousPlayBelief({0, 3}))[1], 1.0);
  EXPECT_THROW(FpStrategy(FictitiousPlayBelief({0, 0})), std::domain_error);
}

// With initial weight total K0 the recursion runs on the shifted index
// t' = K0 + t: sigma_t = (1 - 1/t') sigma_{t-1} + (1/t') indicator.
TEST(FpStrategy, RecursionIdentity) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> w(0.01, 1.0);
  for (int seq = 0; seq < 1000; ++seq) {
    const std::size_t n = 2 + seq % 3;
    std::vector<double> kappa(n);
    for (double& k : kappa) k = w(rng);
    FictitiousPlayBelief belief(kappa);
    const MixedStrategy start = FpStrategy(belief);
    std::vector<double> recursive(start.probs().begin(), start.probs().end());
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 1; t <= 50; ++t) {
      const std::size_t a = pick(rng);
      belief = FpUpdate(belief, {ActionId{a}, t});
      const double shifted = belief.total();
      for (std::size_t k = 0; k < n; ++k)
        recursive[k] = (1 - 1 / shifted) * recursive[k] + (k == a ? 1 / shifted : 0.0);
      const auto ratio = FpStrategy(belief);
      for (std::size_t k = 0; k < n; ++k) ASSERT_NEAR(ratio[k], recursive[k], 1e-12);
    }
  }
}

TEST(ClassicFp, MatchingPenniesFrequenciesConverge) {
  LearnerSpec fp;
  fp.type = LearnerType::kFictitiousPlay;
  fp.tie_break = TieBreak::kFirst;
  const std::vector<LearnerSpec> specs = {fp, fp};
  const auto game = MakeMatchingPennies();
  const auto trace = RunRepeatedGame(game, specs, 10000, 1);
  for (int p = 0; p < 2; ++p) {
    const auto f = EmpiricalFrequencies(trace, p, 2);
    EXPECT_NEAR(f[0], 0.5, 0.05);
    EXPECT_NEAR(f[1], 0.5, 0.05);
  }
}

TEST(ClassicFp, SymmetricStartMiscoordinatesForever) {
  LearnerSpec fp;
  fp.type = LearnerType::kFictitiousPlay;
  fp.tie_break = TieBreak::kFirst;
  fp.kappa0 = std::vector<double>{1, 1};
  const std::vector<LearnerSpec> specs = {fp, fp};
  const auto trace = RunRepeatedGame(MakeTcasGame(2), specs, 1000, 0);
  ASSERT_EQ(trace.records.size(), 1000u);
  for (const auto& r : trace.records) {
    ASSERT_EQ(r.rewards[0], 0.0) << r.iteration;
    ASSERT_EQ(r.rewards[1], 0.0) << r.iteration;
  }
  EXPECT_FALSE(ReachesCoordination(trace, 1, 1000));
}

}  // namespace
}  // namespace fpcoord
