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

#include "fpcoord/boltzmann.h"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fpcoord {

namespace {

void CheckInputs(const Eigen::Ref<const Eigen::VectorXd>& x, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::domain_error("Boltzmann: temperature must be positive and finite");
  }
  if (x.size() == 0) throw std::domain_error("Boltzmann: empty propensity vector");
  if (!x.allFinite()) throw std::domain_error("Boltzmann: non-finite propensity");
}

Eigen::VectorXd Softmax(const Eigen::Ref<const Eigen::VectorXd>& x, double tau) {
  const double shift = x.maxCoeff();
  Eigen::VectorXd z = ((x.array() - shift) / tau).exp();
  return z / z.sum();
}

}  // namespace

MixedStrategy Boltzmann(const Eigen::Ref<const Eigen::VectorXd>& x, double tau) {
  CheckInputs(x, tau);
  const Eigen::VectorXd sigma = Softmax(x, tau);
  return MixedStrategy(std::vector<double>(sigma.data(), sigma.data() + sigma.size()));
}

Eigen::MatrixXd BoltzmannJacobian(const Eigen::Ref<const Eigen::VectorXd>& x, double tau) {
  CheckInputs(x, tau);
  const Eigen::VectorXd sigma = Softmax(x, tau);
  Eigen::MatrixXd jacobian = sigma.asDiagonal();
  jacobian -= sigma * sigma.transpose();
  return jacobian / tau;
}

}  // namespace fpcoord
