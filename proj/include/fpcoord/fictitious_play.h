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

#ifndef FPCOORD_FICTITIOUS_PLAY_H_
#define FPCOORD_FICTITIOUS_PLAY_H_

#include <vector>

#include "fpcoord/game.h"

namespace fpcoord {

// One observed opponent action; time_index counts iterations from 1.
struct Observation {
  ActionId action;
  int time_index = 1;
};

// Classic fictitious-play weights over one opponent's actions.
class FictitiousPlayBelief {
 public:
  explicit FictitiousPlayBelief(std::vector<double> kappa);

  const std::vector<double>& kappa() const { return kappa_; }
  std::size_t size() const { return kappa_.size(); }
  double total() const;

 private:
  std::vector<double> kappa_;
};

// Adds one to the weight of the observed action.
FictitiousPlayBelief FpUpdate(const FictitiousPlayBelief& belief, const Observation& obs);

// Weights normalised by their sum. Throws std::domain_error on a zero sum.
MixedStrategy FpStrategy(const FictitiousPlayBelief& belief);

}  // namespace fpcoord

#endif  // FPCOORD_FICTITIOUS_PLAY_H_
