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

#include <memory>
#include <stdexcept>

namespace fpcoord {

RepeatedGameTrace RunRepeatedGame(const NormalFormGame& game,
                                  std::span<const LearnerSpec> learners, int iterations,
                                  std::uint64_t seed) {
  if (game.num_players() != 2 || learners.size() != 2) {
    throw std::invalid_argument("RunRepeatedGame: two players and two learners required");
  }
  if (iterations < 0) throw std::invalid_argument("RunRepeatedGame: negative iterations");

  std::vector<std::unique_ptr<Learner>> agents;
  for (int p = 0; p < 2; ++p) {
    agents.push_back(MakeLearner(learners[p], game.num_actions(1 - p), seed, p));
  }

  RepeatedGameTrace trace;
  trace.seed = seed;
  trace.records.reserve(iterations);
  for (int t = 1; t <= iterations; ++t) {
    IterationRecord record;
    record.iteration = t;
    for (int p = 0; p < 2; ++p) {
      agents[p]->Predict();
      record.beliefs.push_back(agents[p]->Snapshot());
      record.actions.push_back(agents[p]->Decide(game, p));
    }
    record.rewards = game.payoffs(record.actions);
    for (int p = 0; p < 2; ++p) agents[p]->Observe(record.actions[1 - p]);
    trace.records.push_back(std::move(record));
  }
  return trace;
}

namespace {

bool Coordinated(const IterationRecord& record) {
  for (double r : record.rewards) {
    if (!(r > 0.0)) return false;
  }
  return true;
}

}  // namespace

bool ReachesCoordination(const RepeatedGameTrace& trace, int hold, int within) {
  int run = 0;
  const JointAction* held = nullptr;
  for (const auto& record : trace.records) {
    if (record.iteration > within) break;
    if (Coordinated(record)) {
      run = held != nullptr && *held == record.actions ? run + 1 : 1;
      held = &record.actions;
    } else {
      run = 0;
      held = nullptr;
    }
    if (run >= hold) return true;
  }
  return false;
}

int FirstCoordinatedIteration(const RepeatedGameTrace& trace) {
  for (const auto& record : trace.records) {
    if (Coordinated(record)) return record.iteration;
  }
  return -1;
}

std::vector<double> EmpiricalFrequencies(const RepeatedGameTrace& trace, int player,
                                         std::size_t num_actions) {
  std::vector<double> freq(num_actions, 0.0);
  if (trace.records.empty()) return freq;
  for (const auto& record : trace.records) freq.at(record.actions.at(player).index) += 1.0;
  for (double& f : freq) f /= static_cast<double>(trace.records.size());
  return freq;
}

void WriteRepeatedGameJsonl(const RepeatedGameTrace& trace, std::ostream& out) {
  for (const auto& record : trace.records) {
    nlohmann::ordered_json line;
    line["t"] = record.iteration;
    line["kind"] = "iteration";
    auto actions = nlohmann::ordered_json::array();
    for (const auto& a : record.actions) actions.push_back(a.index);
    line["actions"] = std::move(actions);
    line["rewards"] = record.rewards;
    auto beliefs = nlohmann::ordered_json::array();
    for (const auto& b : record.beliefs) beliefs.push_back(BeliefToJson(b));
    line["beliefs"] = std::move(beliefs);
    out << line.dump() << '\n';
  }
  const int first = FirstCoordinatedIteration(trace);
  nlohmann::ordered_json summary;
  summary["kind"] = "summary";
  summary["seed"] = trace.seed;
  summary["iterations"] = trace.records.size();
  summary["coordinated"] = first >= 0;
  summary["epochs_to_coordination"] = first;
  summary["held_20_within_50"] = ReachesCoordination(trace, 20, 50);
  out << summary.dump() << '\n';
}

}  // namespace fpcoord
