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

#include "fpcoord/motif.h"

#include <map>
#include <optional>
#include <string>

namespace fpcoord {

std::vector<JointDecision> JointDecisions(const DecisionTrace& trace) {
  std::map<int, std::array<int, 2>> by_epoch;
  for (const auto& event : trace.events()) {
    if (event.kind != EventKind::kDecision) continue;
    auto [it, inserted] = by_epoch.try_emplace(event.payload.at("epoch").get<int>(),
                                               std::array<int, 2>{-1, -1});
    it->second.at(event.uav) = event.payload.at("action").get<int>();
  }
  std::vector<JointDecision> joint;
  for (const auto& [epoch, actions] : by_epoch) {
    if (actions[0] < 0 || actions[1] < 0) continue;
    joint.push_back({static_cast<std::size_t>(actions[0]), static_cast<std::size_t>(actions[1])});
  }
  return joint;
}

std::optional<JointDecision> InitialJointAction(const DecisionTrace& trace) {
  std::array<int, 2> initial{-1, -1};
  for (const auto& event : trace.events()) {
    if (event.kind != EventKind::kDecision || event.payload.value("epoch", 0) != 1) continue;
    if (!event.payload.contains("previous")) continue;
    initial.at(event.uav) = event.payload["previous"].get<int>();
  }
  if (initial[0] < 0 || initial[1] < 0) return std::nullopt;
  return JointDecision{static_cast<std::size_t>(initial[0]), static_cast<std::size_t>(initial[1])};
}

MotifReport DetectCoordinationMotif(const DecisionTrace& trace, MotifStart start) {
  MotifReport report;
  if (start == MotifStart::kInitialBands) {
    const auto initial = InitialJointAction(trace);
    if (!initial) return report;
    report.sequence.push_back(*initial);
  }
  for (const auto& joint : JointDecisions(trace)) report.sequence.push_back(joint);
  const auto& d = report.sequence;
  if (d.empty() || d[0][0] != d[0][1]) return report;

  for (std::size_t k = 1; k < d.size(); ++k) {
    if (d[k][0] != d[k][1]) {
      report.split = static_cast<int>(k);
      break;
    }
    if (report.first_simultaneous_flip < 0 && d[k][0] != d[k - 1][0] && d[k][1] != d[k - 1][1]) {
      report.first_simultaneous_flip = static_cast<int>(k);
    }
  }

  std::array<bool, 2> passing{};
  for (const auto& event : trace.events()) {
    if (event.kind == EventKind::kPhaseChange && event.payload.value("to", std::string()) == "passing") {
      passing.at(event.uav) = true;
    }
  }
  report.both_passing = passing[0] && passing[1];
  report.found = report.first_simultaneous_flip > 0 && report.split > 0 &&
                 report.both_passing && trace.summary().passed;
  return report;
}

}  // namespace fpcoord
