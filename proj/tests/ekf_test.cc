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

#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "fpcoord/boltzmann.h"
#include "support/textbook_ekf.h"

namespace fpcoord {
namespace {

using testing::Mat;
using testing::OracleBelief;
using testing::Vec;

PropensityBelief Belief(Eigen::Vector2d mean, Eigen::Matrix2d cov) {
  return {Eigen::VectorXd(mean), Eigen::MatrixXd(cov)};
}

OracleBelief ToOracle(const PropensityBelief& b) {
  OracleBelief o{Vec(b.mean.data(), b.mean.data() + b.mean.size()), {}};
  for (Eigen::Index i = 0; i < b.cov.rows(); ++i) {
    o.cov.emplace_back();
    for (Eigen::Index j = 0; j < b.cov.cols(); ++j) o.cov.back().push_back(b.cov(i, j));
  }
  return o;
}

Eigen::MatrixXd RandomSpd(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0, 0.6);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  return a * a.transpose() + 0.05 * Eigen::MatrixXd::Identity(n, n);
}

TEST(EkfPredict, Examples) {
  EkfParams params;
  const auto b = EkfPredict(Belief({0.3, -0.3}, 0.1 * Eigen::Matrix2d::Identity()), params, 0.0);
  EXPECT_EQ(b.mean, Eigen::Vector2d(0.3, -0.3));
  EXPECT_NEAR(b.cov(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(b.cov(1, 1), 0.25, 1e-15);
  EXPECT_EQ(b.cov(0, 1), 0.0);

  Eigen::Matrix2d p;
  p << 0.3, 0.02, 0.02, 0.4;
  const auto kept = EkfPredict(Belief({1, 2}, p), params, 0.7);
  EXPECT_EQ(kept.cov(0, 1), 0.02);
  EXPECT_EQ(kept.cov(1, 0), 0.02);
  EXPECT_NEAR(kept.cov(0, 0), 0.3 + 0.05 + 0.1 + 1e-4 * 0.7, 1e-15);

  EkfParams quiet;
  quiet.xi_diag = {0.0};
  quiet.d_base = 0.0;
  quiet.d_scale = 0.0;
  quiet.noise_var = 0.0;
  std::mt19937_64 rng(1);
  const auto same = EkfPredict(Belief({0.4, 0.1}, p), quiet, rng);
  EXPECT_EQ(same.mean, Eigen::Vector2d(0.4, 0.1));
  EXPECT_EQ(same.cov, Eigen::MatrixXd(p));
}

TEST(EkfPredict, PreservesMeanAndGrowsDiagonal) {
  std::mt19937_64 rng(21);
  EkfParams params;
  params.noise_var = 4.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    PropensityBelief b{Eigen::VectorXd::Random(n), RandomSpd(rng, n)};
    const auto next = EkfPredict(b, params, rng);
    EXPECT_EQ(next.mean, b.mean);
    for (int i = 0; i < n; ++i) EXPECT_GE(next.cov(i, i), b.cov(i, i));
  }
}

TEST(EkfInnovation, Examples) {
  EXPECT_EQ(EkfInnovation(MixedStrategy({0.5, 0.5}), {ActionId{0}}), Eigen::Vector2d(0.5, -0.5));
  const auto v = EkfInnovation(MixedStrategy({0.73106, 0.26894}), {ActionId{1}});
  EXPECT_NEAR(v[0], -0.73106, 1e-15);
  EXPECT_NEAR(v[1], 0.73106, 1e-15);
  EXPECT_EQ(EkfInnovation(MixedStrategy({1, 0}), {ActionId{0}}), Eigen::Vector2d(0, 0));
  EXPECT_THROW(EkfInnovation(MixedStrategy({1, 0}), {ActionId{2}}), std::out_of_range);
}

TEST(EkfUpdate, FrozenOracleExample) {
  EkfParams params;
  const auto r = EkfUpdate(Belief({0, 0}, 0.25 * Eigen::Matrix2d::Identity()), {ActionId{0}}, params, 1);
  EXPECT_NEAR(r.belief.mean[0], 0.03076923076923077, 1e-15);
  EXPECT_NEAR(r.belief.mean[1], -0.03076923076923077, 1e-15);
  EXPECT_NEAR(r.belief.cov(0, 0), 0.24807692307692308, 1e-15);
  EXPECT_NEAR(r.belief.cov(0, 1), 0.00192307692307692, 1e-15);
  EXPECT_NEAR(r.belief.cov(1, 1), 0.24807692307692308, 1e-15);
  EXPECT_FALSE(r.regularized);
}

TEST(EkfUpdate, SaturatedStrategyCarriesNoInformation) {
  EkfParams params;
  const auto prior = Belief({5000, 0}, 0.3 * Eigen::Matrix2d::Identity());
  const auto r = EkfUpdate(prior, {ActionId{1}}, params, 3);
  EXPECT_LT((r.belief.mean - prior.mean).cwiseAbs().maxCoeff(), 1e-300);
  EXPECT_LT((r.belief.cov - prior.cov).cwiseAbs().maxCoeff(), 1e-300);
}

TEST(EkfUpdate, SingularInnovationIsRegularized) {
  EkfParams params;
  params.obs_noise_schedule = ObsNoiseSchedule::kConstantZ;
  params.z_diag = {0.0};
  const auto r = EkfUpdate(Belief({0, 0}, 0.25 * Eigen::Matrix2d::Identity()), {ActionId{0}}, params, 1);
  EXPECT_TRUE(r.regularized);
  EXPECT_NO_THROW(r.belief.Validate());
}

TEST(EkfUpdate, AgreesWithTextbookOracle) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0, 1.5);
  std::uniform_real_distribution<double> u(0.2, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    EkfParams params;
    params.tau = u(rng);
    params.obs_noise_schedule = trial % 2 ? ObsNoiseSchedule::kConstantZ : ObsNoiseSchedule::kDecayingOneOverT;
    params.z_diag.assign(n, 0.0);
    for (double& z : params.z_diag) z = u(rng) / 4;
    PropensityBelief prior{Eigen::VectorXd(n), RandomSpd(rng, n)};
    for (int i = 0; i < n; ++i) prior.mean[i] = g(rng);
    const std::size_t observed = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const int t = 1 + trial % 17;

    Mat r = testing::Zeros(n);
    for (int i = 0; i < n; ++i) r[i][i] = trial % 2 ? params.z_diag[i] : 1.0 / t;
    const OracleBelief want = testing::TextbookEkfUpdate(ToOracle(prior), observed, params.tau, r);
    const auto got = EkfUpdate(prior, {ActionId{observed}, t}, params, t);
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(got.belief.mean[i], want.mean[i], 1e-9) << trial;
      for (int j = 0; j < n; ++j) EXPECT_NEAR(got.belief.cov(i, j), want.cov[i][j], 1e-9) << trial;
    }
  }
}

TEST(EkfUpdate, EqualAndOppositeShiftsUnderIsotropicPrior) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0, 2);
  std::uniform_real_distribution<double> u(0.01, 3);
  EkfParams params;
  for (int trial = 0; trial < 500; ++trial) {
    const auto prior = Belief({g(rng), g(rng)}, u(rng) * Eigen::Matrix2d::Identity());
    const auto r = EkfUpdate(prior, {ActionId{std::size_t(trial % 2)}}, params, 1 + trial % 9);
    const Eigen::VectorXd shift = r.belief.mean - prior.mean;
    EXPECT_NEAR(shift[0], -shift[1], 1e-12);
  }
  const auto r = EkfUpdate(Belief({0, 0}, 0.25 * Eigen::Matrix2d::Identity()), {ActionId{0}}, params, 1);
  EXPECT_GT(r.belief.mean[0], 0.0);
  EXPECT_LT(r.belief.mean[1], 0.0);
}

TEST(EkfUpdate, CovarianceStaysSymmetricPsdOverChainedUpdates) {
  std::mt19937_64 rng(2024);
  for (auto schedule : {ObsNoiseSchedule::kDecayingOneOverT, ObsNoiseSchedule::kConstantZ}) {
    EkfParams params;
    params.obs_noise_schedule = schedule;
    PropensityBelief b = PropensityBelief::Initial(2);
    std::bernoulli_distribution coin(0.3);
    for (int t = 1; t <= 10000; ++t) {
      b = EkfPredict(b, params, rng);
      const auto r = EkfUpdate(b, {ActionId{coin(rng) ? 1u : 0u}, t}, params, t);
      ASSERT_GE(r.min_eigenvalue_before_floor, -1e-9) << t;
      b = r.belief;
      ASSERT_LE((b.cov - b.cov.transpose()).cwiseAbs().maxCoeff(), 1e-9) << t;
      ASSERT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(b.cov).eigenvalues().minCoeff(), -1e-9) << t;
    }
  }
}

TEST(EkfFpDecide, Examples) {
  const auto game = MakeTcasGame(2);
  EkfParams params;
  const std::vector<PropensityBelief> warm = {Belief({2, 0}, Eigen::Matrix2d::Identity())};
  EXPECT_EQ(EkfFpDecide(warm, game, params, 0, {TieBreak::kStay, ActionId{0}}).index, 1u);
  const std::vector<PropensityBelief> even = {Belief({0, 0}, Eigen::Matrix2d::Identity())};
  EXPECT_EQ(EkfFpDecide(even, game, params, 0, {TieBreak::kStay, ActionId{1}}).index, 1u);
  EXPECT_EQ(EkfFpDecide(even, game, params, 0, {TieBreak::kStay, ActionId{0}}).index, 0u);
  const std::vector<PropensityBelief> cold = {Belief({-1, 3}, Eigen::Matrix2d::Identity())};
  EXPECT_EQ(EkfFpDecide(cold, game, params, 1, {TieBreak::kStay, ActionId{1}}).index, 0u);
}

TEST(EkfFpDecide, EqualsBestResponseAndArgminOnTcasGrid) {
  EkfParams params;
  for (double a : {0.1, 1.0, 7.5}) {
    const auto game = MakeTcasGame(2, a);
    for (double x0 = -4; x0 <= 4; x0 += 0.25) {
      for (double x1 = -4; x1 <= 4; x1 += 0.25) {
        if (x0 == x1) continue;
        const std::vector<PropensityBelief> b = {Belief({x0, x1}, Eigen::Matrix2d::Identity())};
        const auto sigma = Boltzmann(b[0].mean, params.tau);
        const std::size_t argmin = sigma[0] < sigma[1] ? 0 : 1;
        for (int player = 0; player < 2; ++player) {
          const ActionId d = EkfFpDecide(b, game, params, player, {TieBreak::kStay, ActionId{0}});
          EXPECT_EQ(d.index, argmin);
          EXPECT_EQ(d, BestResponse(game, player, {&sigma, 1}, {TieBreak::kStay, ActionId{0}}));
        }
      }
    }
  }
}

}  // namespace
}  // namespace fpcoord
