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

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace fpcoord {

FictitiousPlayBelief::FictitiousPlayBelief(std::vector<double> kappa)
    : kappa_(std::move(kappa)) {
  if (kappa_.empty()) throw std::invalid_argument("FictitiousPlayBelief: no actions");
  for (double w : kappa_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("FictitiousPlayBelief: weights must be finite and >= 0");
    }
  }
}

double FictitiousPlayBelief::total() const {
  return std::accumulate(kappa_.begin(), kappa_.end(), 0.0);
}

FictitiousPlayBelief FpUpdate(const FictitiousPlayBelief& belief, const Observation& obs) {
  if (obs.action.index >= belief.size()) {
    throw std::out_of_range("FpUpdate: observed action " + std::to_string(obs.action.index) +
                            " outside the opponent's action set");
  }
  std::vector<double> kappa = belief.kappa();
  kappa[obs.action.index] += 1.0;
  return FictitiousPlayBelief(std::move(kappa));
}

MixedStrategy FpStrategy(const FictitiousPlayBelief& belief) {
  const double total = belief.total();
  if (!(total > 0.0)) throw std::domain_error("FpStrategy: weights sum to zero");
  std::vector<double> probs = belief.kappa();
  for (double& p : probs) p /= total;
  return MixedStrategy(std::move(probs));
}

}  // namespace fpcoord
