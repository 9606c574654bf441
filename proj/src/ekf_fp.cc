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

#include "fpcoord/ekf_fp.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "fpcoord/boltzmann.h"

namespace fpcoord {

namespace {

double DiagEntry(const std::vector<double>& diag, std::size_t k) {
  return diag.size() == 1 ? diag.front() : diag.at(k);
}

void CheckDiag(const std::vector<double>& diag, std::size_t num_actions, const char* field) {
  if (diag.size() != 1 && diag.size() != num_actions) {
    throw std::invalid_argument(std::string("EkfParams field '") + field + "': expected 1 or " +
                                std::to_string(num_actions) + " entries");
  }
  for (double v : diag) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(std::string("EkfParams field '") + field + "'" +
                                  ": entries must be finite and >= 0");
    }
  }
}

void CheckObservation(const Observation& obs, std::size_t num_actions) {
  if (obs.action.index >= num_actions) {
    throw std::out_of_range("observed action " + std::to_string(obs.action.index) +
                            " outside an action set of size " + std::to_string(num_actions));
  }
}

}  // namespace

PropensityBelief PropensityBelief::Initial(std::size_t num_actions, double cov_scale) {
  return PropensityBelief{Eigen::VectorXd::Zero(num_actions),
                          cov_scale * Eigen::MatrixXd::Identity(num_actions, num_actions)};
}

void PropensityBelief::Validate() const {
  if (mean.size() == 0) throw std::invalid_argument("PropensityBelief: empty mean");
  if (cov.rows() != mean.size() || cov.cols() != mean.size()) {
    throw std::invalid_argument("PropensityBelief: covariance dimension mismatch");
  }
  if (!mean.allFinite() || !cov.allFinite()) {
    throw std::invalid_argument("PropensityBelief: non-finite entries");
  }
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kCovarianceTolerance) {
    throw std::invalid_argument("PropensityBelief: covariance not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (cov + cov.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kCovarianceTolerance) {
    throw std::invalid_argument("PropensityBelief: covariance not positive semidefinite");
  }
}

std::string_view ObsNoiseScheduleName(ObsNoiseSchedule schedule) {
  return schedule == ObsNoiseSchedule::kConstantZ ? "constant_Z" : "decaying_1_over_t";
}

ObsNoiseSchedule ParseObsNoiseSchedule(std::string_view name) {
  if (name == "constant_Z") return ObsNoiseSchedule::kConstantZ;
  if (name == "decaying_1_over_t") return ObsNoiseSchedule::kDecayingOneOverT;
  throw std::invalid_argument("unknown obs_noise_schedule '" + std::string(name) + "'");
}

void EkfParams::Validate(std::size_t num_actions) const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("EkfParams field 'tau': must be positive");
  }
  CheckDiag(xi_diag, num_actions, "xi_diag");
  CheckDiag(z_diag, num_actions, "z_diag");
  if (!std::isfinite(d_base) || d_base < 0.0) {
    throw std::invalid_argument("EkfParams field 'd_base': must be finite and >= 0");
  }
  if (!std::isfinite(d_scale) || d_scale < 0.0) {
    throw std::invalid_argument("EkfParams field 'd_scale': must be finite and >= 0");
  }
  if (!std::isfinite(noise_var) || noise_var < 0.0) {
    throw std::invalid_argument("EkfParams field 'noise_var': must be finite and >= 0");
  }
}

Eigen::VectorXd EkfParams::Xi(std::size_t num_actions) const {
  Eigen::VectorXd xi(num_actions);
  for (std::size_t k = 0; k < num_actions; ++k) xi[k] = DiagEntry(xi_diag, k);
  return xi;
}

Eigen::MatrixXd EkfParams::ObservationNoise(std::size_t num_actions, int t) const {
  if (t < 1) throw std::invalid_argument("observation noise: time index must be >= 1");
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(num_actions, num_actions);
  for (std::size_t k = 0; k < num_actions; ++k) {
    r(k, k) = obs_noise_schedule == ObsNoiseSchedule::kConstantZ ? DiagEntry(z_diag, k)
                                                                 : 1.0 / t;
  }
  return r;
}

PropensityBelief EkfPredict(const PropensityBelief& belief, const EkfParams& params,
                            double n) {
  const auto num_actions = static_cast<std::size_t>(belief.mean.size());
  params.Validate(num_actions);
  const double d = params.d_base + params.d_scale * std::abs(n);
  PropensityBelief predicted = belief;
  predicted.cov.diagonal().array() += params.Xi(num_actions).array() + d;
  return predicted;
}

PropensityBelief EkfPredict(const PropensityBelief& belief, const EkfParams& params,
                            std::mt19937_64& rng) {
  double n = 0.0;
  if (params.noise_var > 0.0) {
    std::normal_distribution<double> noise(0.0, std::sqrt(params.noise_var));
    n = noise(rng);
  }
  return EkfPredict(belief, params, n);
}

Eigen::VectorXd EkfInnovation(const MixedStrategy& predicted, const Observation& obs) {
  CheckObservation(obs, predicted.size());
  Eigen::VectorXd v(predicted.size());
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    v[k] = (k == obs.action.index ? 1.0 : 0.0) - predicted[k];
  }
  return v;
}

double SanitizeCovariance(Eigen::MatrixXd& cov) {
  cov = 0.5 * (cov + cov.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const double min_eigenvalue = eig.eigenvalues().minCoeff();
  if (min_eigenvalue < 0.0) {
    const Eigen::VectorXd clamped = eig.eigenvalues().cwiseMax(0.0);
    cov = eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
  }
  return min_eigenvalue;
}

EkfUpdateResult EkfUpdate(const PropensityBelief& predicted, const Observation& obs,
                          const EkfParams& params, int t) {
  const auto num_actions = static_cast<std::size_t>(predicted.mean.size());
  params.Validate(num_actions);
  CheckObservation(obs, num_actions);
  if (t < 1) throw std::invalid_argument("EkfUpdate: time index must be >= 1");

  const MixedStrategy sigma = Boltzmann(predicted.mean, params.tau);
  const Eigen::MatrixXd h = BoltzmannJacobian(predicted.mean, params.tau);
  const Eigen::VectorXd innovation = EkfInnovation(sigma, obs);
  const Eigen::MatrixXd& p = predicted.cov;

  Eigen::MatrixXd s = h * p * h.transpose() + params.ObservationNoise(num_actions, t);
  s = 0.5 * (s + s.transpose()).eval();

  EkfUpdateResult result;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_eig(s, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, s_eig.eigenvalues().cwiseAbs().maxCoeff());
  if (s_eig.eigenvalues().minCoeff() <= 1e-12 * scale) {
    s += kInnovationRegularizer * Eigen::MatrixXd::Identity(num_actions, num_actions);
    result.regularized = true;
  }

  // K = P H^T S^-1, solved as (S^-1 H P)^T with S and P symmetric.
  const Eigen::MatrixXd gain = s.ldlt().solve(h * p).transpose();

  result.belief.mean = predicted.mean + gain * innovation;
  result.belief.cov =
      (Eigen::MatrixXd::Identity(num_actions, num_actions) - gain * h) * p;
  result.min_eigenvalue_before_floor = SanitizeCovariance(result.belief.cov);
  return result;
}

ClosedFormUpdate EkfUpdateClosedForm2x2(const PropensityBelief& predicted,
                                        const Observation& obs, const EkfParams& params,
                                        int t) {
  if (predicted.mean.size() != 2 || predicted.cov.rows() != 2 || predicted.cov.cols() != 2) {
    throw std::invalid_argument("EkfUpdateClosedForm2x2: exactly two actions required");
  }
  params.Validate(2);
  CheckObservation(obs, 2);
  if (t < 1) throw std::invalid_argument("EkfUpdateClosedForm2x2: time index must be >= 1");

  const MixedStrategy sigma = Boltzmann(predicted.mean, params.tau);
  const double s1 = sigma[0];
  const double s2 = sigma[1];
  const Eigen::MatrixXd& p = predicted.cov;
  const double spread = p(0, 0) + p(1, 1) - 2.0 * p(0, 1);
  const double inv_t = 1.0 / t;

  ClosedFormUpdate out;
  out.notes = {
      "jacobian: s1*s2*[[1,-1],[-1,1]] without the 1/tau factor of the softmax derivative",
      "c1: single power of s1*s2; H P H^T carries (s1*s2)^2",
      "c2: left-to-right product 1/(t c1) * 1/(P11+P22-2P12) * 1/(c1 (1+c1)^2)",
      "observation noise: (1/t) I regardless of obs_noise_schedule",
      "mean: both components shift by the observed action's row (P_aa - P_ab); "
      "action labels swapped when action 1 is observed",
  };
  out.c1 = s1 * s2 * spread;
  out.c3 = p(0, 0) - p(0, 1);
  out.c4 = p(1, 1) - p(0, 1);
  out.c2 = (1.0 / (t * out.c1)) * (1.0 / spread) * (1.0 / (out.c1 * (1.0 + out.c1) * (1.0 + out.c1)));
  out.jacobian << s1 * s2, -s1 * s2, -s1 * s2, s1 * s2;
  out.gain << out.c3, -out.c3, -out.c4, out.c4;
  out.gain *= out.c2;

  const Eigen::VectorXd innovation = EkfInnovation(sigma, obs);
  out.innovation = innovation;

  const bool no_information = innovation.cwiseAbs().maxCoeff() == 0.0 || !(out.c1 > 0.0) ||
                              !std::isfinite(out.c2);
  if (no_information) {
    out.degenerate = true;
    out.notes.emplace_back("degenerate: zero innovation or c1 == 0; belief unchanged");
    out.belief = predicted;
    out.raw_cov = p;
    return out;
  }

  // Coefficients are written for action 0 observed; relabel for action 1.
  const std::size_t a = obs.action.index;
  const std::size_t b = 1 - a;
  const double own_row = p(a, a) - p(a, b);
  const double other_row = p(b, b) - p(a, b);
  const double shift = 2.0 * own_row * innovation[a] * out.c2;

  out.belief.mean = predicted.mean;
  out.belief.mean[a] += shift;
  out.belief.mean[b] -= shift;

  const double common = (2.0 + inv_t) * out.c2 * out.c2 * out.c1;
  Eigen::Matrix2d raw;
  raw(a, a) = p(a, a) - common * (own_row * own_row - own_row * other_row);
  raw(a, b) = p(a, b) - common * (-own_row * own_row - own_row * other_row);
  raw(b, a) = p(b, a) - common * (-own_row * own_row - own_row * other_row);
  raw(b, b) = p(b, b) - common * (other_row * other_row - own_row * other_row);
  out.raw_cov = raw;

  // c2 grows without bound as s1*s2 -> 0, so the printed update can overflow.
  if (!out.belief.mean.allFinite() || !raw.allFinite()) {
    out.degenerate = true;
    out.notes.emplace_back("degenerate: non-finite update discarded; belief unchanged");
    out.belief = predicted;
    return out;
  }

  Eigen::MatrixXd cov = raw;
  out.floored = SanitizeCovariance(cov) < 0.0;
  out.belief.cov = cov;
  return out;
}

ActionId EkfFpDecide(std::span<const PropensityBelief> beliefs, const NormalFormGame& game,
                     const EkfParams& params, int player, const TieBreakRule& tie) {
  std::vector<MixedStrategy> strategies;
  strategies.reserve(beliefs.size());
  for (const auto& belief : beliefs) strategies.push_back(Boltzmann(belief.mean, params.tau));
  return BestResponse(game, player, strategies, tie);
}

}  // namespace fpcoord
