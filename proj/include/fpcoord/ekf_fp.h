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
#ifndef FPCOORD_EKF_FP_H_
#define FPCOORD_EKF_FP_H_

#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "fpcoord/fictitious_play.h"
#include "fpcoord/game.h"

namespace fpcoord {

// Symmetry tolerance and eigenvalue floor tolerance for covariances.
inline constexpr double kCovarianceTolerance = 1e-9;

// Added to the innovation covariance when it is numerically singular.
inline constexpr double kInnovationRegularizer = 1e-9;

// Estimate of one opponent's unconstrained action propensities.
struct PropensityBelief {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;

  static PropensityBelief Initial(std::size_t num_actions, double cov_scale = 1.0);

  // Throws std::invalid_argument unless cov is square, matches mean,
  // symmetric within kCovarianceTolerance and PSD within the same tolerance.
  void Validate() const;
};

enum class ObsNoiseSchedule { kConstantZ, kDecayingOneOverT };

std::string_view ObsNoiseScheduleName(ObsNoiseSchedule schedule);
ObsNoiseSchedule ParseObsNoiseSchedule(std::string_view name);

// Filter parameters. Diagonal vectors of length one are broadcast to every
// action.
struct EkfParams {
  double tau = 2.0;
  std::vector<double> xi_diag = {0.05};
  std::vector<double> z_diag = {0.3};
  double d_base = 0.1;
  double d_scale = 1e-4;
  double noise_var = 1e-4;
  ObsNoiseSchedule obs_noise_schedule = ObsNoiseSchedule::kDecayingOneOverT;

  void Validate(std::size_t num_actions) const;
  Eigen::VectorXd Xi(std::size_t num_actions) const;
  // Observation noise covariance at update index t >= 1.
  Eigen::MatrixXd ObservationNoise(std::size_t num_actions, int t) const;
};

// Prediction with an explicit draw n: mean unchanged, diagonal of the
// covariance grows by xi + d_base + d_scale * |n|.
PropensityBelief EkfPredict(const PropensityBelief& belief, const EkfParams& params,
                            double n);

// Draws n ~ Normal(0, noise_var) from rng (no draw when noise_var == 0).
PropensityBelief EkfPredict(const PropensityBelief& belief, const EkfParams& params,
                            std::mt19937_64& rng);

// Indicator of the observed action minus the predicted strategy.
Eigen::VectorXd EkfInnovation(const MixedStrategy& predicted, const Observation& obs);

struct EkfUpdateResult {
  PropensityBelief belief;
  // The innovation covariance was singular and got kInnovationRegularizer * I.
  bool regularized = false;
  // Smallest eigenvalue of the symmetrised posterior before flooring at 0.
  double min_eigenvalue_before_floor = 0.0;
};

// Extended Kalman measurement update with the Boltzmann map as observation
// model, followed by symmetrisation and an eigenvalue floor at zero.
EkfUpdateResult EkfUpdate(const PropensityBelief& predicted, const Observation& obs,
                          const EkfParams& params, int t);

// Two-action update that evaluates the printed closed-form coefficients
// literally. Where those differ from EkfUpdate, `notes` says how.
struct ClosedFormUpdate {
  PropensityBelief belief;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  Eigen::Vector2d innovation = Eigen::Vector2d::Zero();
  Eigen::Matrix2d jacobian = Eigen::Matrix2d::Zero();  // printed H, no 1/tau
  Eigen::Matrix2d gain = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d raw_cov = Eigen::Matrix2d::Zero();   // before hygiene
  bool degenerate = false;
  bool floored = false;
  std::vector<std::string> notes;
};

ClosedFormUpdate EkfUpdateClosedForm2x2(const PropensityBelief& predicted,
                                        const Observation& obs, const EkfParams& params,
                                        int t);

// Opponent strategies from the (predicted) propensity means, then a pure
// best response for `player`.
ActionId EkfFpDecide(std::span<const PropensityBelief> beliefs, const NormalFormGame& game,
                     const EkfParams& params, int player, const TieBreakRule& tie);

// Symmetrise and clamp negative eigenvalues to zero. Returns the smallest
// eigenvalue seen before clamping.
double SanitizeCovariance(Eigen::MatrixXd& cov);

}  // namespace fpcoord

#endif  // FPCOORD_EKF_FP_H_
