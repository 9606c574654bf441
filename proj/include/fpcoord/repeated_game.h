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

#ifndef FPCOORD_REPEATED_GAME_H_
#define FPCOORD_REPEATED_GAME_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "fpcoord/game.h"
#include "fpcoord/learner.h"
#include "json.hpp"

namespace fpcoord {

struct IterationRecord {
  int iteration = 0;  // 1-based
  JointAction actions;
  std::vector<double> rewards;
  // Beliefs each player held when deciding (after prediction).
  std::vector<BeliefSnapshot> beliefs;
};

struct RepeatedGameTrace {
  std::uint64_t seed = 0;
  std::vector<IterationRecord> records;
};

// Plays `iterations` rounds of a two-player game. Each round every learner
// predicts and decides, the joint action is scored, then each learner
// observes its opponent's action. Deterministic given `seed`.
RepeatedGameTrace RunRepeatedGame(const NormalFormGame& game,
                                  std::span<const LearnerSpec> learners, int iterations,
                                  std::uint64_t seed);

// True when some joint action with positive reward for every player is
// played for `hold` consecutive rounds, all within the first `within` rounds.
bool ReachesCoordination(const RepeatedGameTrace& trace, int hold, int within);

// First round whose joint action gives every player a positive reward, or -1.
int FirstCoordinatedIteration(const RepeatedGameTrace& trace);

// Empirical action frequencies of `player` over the whole trace.
std::vector<double> EmpiricalFrequencies(const RepeatedGameTrace& trace, int player,
                                         std::size_t num_actions);

// JSON Lines: one {"t", "kind": "iteration", "actions", "rewards", "beliefs"}
// object per round followed by one {"kind": "summary", ...} line.
void WriteRepeatedGameJsonl(const RepeatedGameTrace& trace, std::ostream& out);

}  // namespace fpcoord

#endif  // FPCOORD_REPEATED_GAME_H_
