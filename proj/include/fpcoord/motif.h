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

#ifndef FPCOORD_MOTIF_H_
#define FPCOORD_MOTIF_H_

#include <array>
#include <optional>
#include <vector>

#include "fpcoord/trace.h"

namespace fpcoord {

using JointDecision = std::array<std::size_t, 2>;

// Joint decisions per epoch, for epochs where both UAVs decided.
std::vector<JointDecision> JointDecisions(const DecisionTrace& trace);

// Bands held before the first decision, read from the "previous" field of
// the epoch-1 decisions. Empty when either UAV lacks one.
std::optional<JointDecision> InitialJointAction(const DecisionTrace& trace);

enum class MotifStart {
  // The bands held before any decision are the initial choice.
  kInitialBands,
  // The first joint decision is the initial choice.
  kFirstDecision,
};

struct MotifReport {
  bool found = false;
  // Joint actions examined: the initial bands (kInitialBands) followed by
  // one entry per epoch in which both UAVs decided.
  std::vector<JointDecision> sequence;
  int first_simultaneous_flip = -1;  // index into sequence
  int split = -1;                    // index into sequence
  bool both_passing = false;
};

// Identical initial choice, at least one step where both UAVs switch band
// together while still matched, then a split, then both UAVs Passing, and
// the run passed.
MotifReport DetectCoordinationMotif(const DecisionTrace& trace,
                                    MotifStart start = MotifStart::kInitialBands);

}  // namespace fpcoord

#endif  // FPCOORD_MOTIF_H_
