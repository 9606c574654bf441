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

#ifndef FPCOORD_BOLTZMANN_H_
#define FPCOORD_BOLTZMANN_H_

#include <Eigen/Core>

#include "fpcoord/game.h"

namespace fpcoord {

// Softmax of x / tau, evaluated after subtracting max(x) so that inputs as
// large as several hundred tau neither overflow nor lose the simplex.
// Throws std::domain_error on non-finite input or tau <= 0.
MixedStrategy Boltzmann(const Eigen::Ref<const Eigen::VectorXd>& x, double tau);

// d sigma_k / d x_m = sigma_k (delta_km - sigma_m) / tau.
Eigen::MatrixXd BoltzmannJacobian(const Eigen::Ref<const Eigen::VectorXd>& x, double tau);

}  // namespace fpcoord

#endif  // FPCOORD_BOLTZMANN_H_
