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

#ifndef FPCOORD_LEARNER_H_
#define FPCOORD_LEARNER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fpcoord/ekf_fp.h"
#include "fpcoord/fictitious_play.h"
#include "fpcoord/game.h"
#include "json.hpp"

namespace fpcoord {

enum class LearnerType { kFictitiousPlay, kEkfFictitiousPlay, kFixed, kScripted };

enum class EkfUpdateMode { kGeneric, kClosedForm };

// Parsed learner configuration, see LearnerSpecFromJson for the document.
struct LearnerSpec {
  LearnerType type = LearnerType::kEkfFictitiousPlay;
  EkfParams ekf;
  EkfUpdateMode update_mode = EkfUpdateMode::kGeneric;
  TieBreak tie_break = TieBreak::kStay;
  std::uint64_t seed = 0;

  // Classic FP initial weights; drawn uniform on (0, 1] when absent.
  std::optional<std::vector<double>> kappa0;

  // EKF initial belief. An explicit init_mean wins; otherwise the mean is
  // drawn from Normal(0, init_mean_std^2) per action.
  std::optional<std::vector<double>> init_mean;
  double init_mean_std = 1.0;
  double init_cov = 1.0;

  // Fixed / scripted learners. A script repeats its last entry.
  std::size_t fixed_action = 0;
  std::vector<std::size_t> script;
};

// {"type": "fp" | "ekf_fp" | "fixed" | "scripted", "tau", "xi_diag", "z_diag",
//  "d_base", "d_scale", "noise_var", "obs_noise_schedule", "tie_break",
//  "seed", "update_mode", "kappa0", "init_mean", "init_mean_std",
//  "init_cov", "action", "actions"}. Missing keys keep their defaults.
// Throws std::invalid_argument naming the offending field.
LearnerSpec LearnerSpecFromJson(const nlohmann::json& doc);
nlohmann::ordered_json LearnerSpecToJson(const LearnerSpec& spec);

// Belief snapshot for traces: estimated opponent strategy plus the
// internal state (propensity mean/cov or fictitious-play weights).
struct BeliefSnapshot {
  std::vector<double> strategy;
  std::vector<double> mean;
  std::vector<std::vector<double>> cov;
  std::vector<double> weights;
  bool regularized = false;
};

nlohmann::ordered_json BeliefToJson(const BeliefSnapshot& snapshot);

// Two-player opponent-model learner. One iteration is Predict, Decide and
// then Observe with the opponent's action; callers that only learn the
// opponent's action later may call Observe before the next Predict.
class Learner {
 public:
  virtual ~Learner() = default;

  virtual void Predict() {}
  virtual ActionId Decide(const NormalFormGame& game, int player) = 0;
  virtual void Observe(ActionId opponent_action) = 0;
  virtual BeliefSnapshot Snapshot() const = 0;

  // Action used by the `stay` tie break and reported before any decision.
  ActionId current_action() const { return current_; }
  void set_current_action(ActionId action) { current_ = action; }

 protected:
  ActionId current_{};
};

class FictitiousPlayLearner final : public Learner {
 public:
  FictitiousPlayLearner(FictitiousPlayBelief belief, TieBreak tie_break, std::mt19937_64 rng);

  ActionId Decide(const NormalFormGame& game, int player) override;
  void Observe(ActionId opponent_action) override;
  BeliefSnapshot Snapshot() const override;

  const FictitiousPlayBelief& belief() const { return belief_; }

 private:
  FictitiousPlayBelief belief_;
  TieBreak tie_break_;
  std::mt19937_64 rng_;
  int t_ = 0;
};

class EkfFpLearner final : public Learner {
 public:
  EkfFpLearner(PropensityBelief belief, EkfParams params, EkfUpdateMode mode,
               TieBreak tie_break, std::mt19937_64 rng);

  void Predict() override;
  ActionId Decide(const NormalFormGame& game, int player) override;
  void Observe(ActionId opponent_action) override;
  BeliefSnapshot Snapshot() const override;

  const PropensityBelief& belief() const { return belief_; }
  int updates() const { return t_; }

 private:
  PropensityBelief belief_;
  EkfParams params_;
  EkfUpdateMode mode_;
  TieBreak tie_break_;
  std::mt19937_64 rng_;
  int t_ = 0;
  bool last_regularized_ = false;
};

class ScriptedLearner final : public Learner {
 public:
  explicit ScriptedLearner(std::vector<std::size_t> script);

  ActionId Decide(const NormalFormGame& game, int player) override;
  void Observe(ActionId) override {}
  BeliefSnapshot Snapshot() const override { return {}; }

 private:
  std::vector<std::size_t> script_;
  std::size_t next_ = 0;
};

// Builds a learner for an opponent with `opponent_actions` actions. The
// random stream is seeded from (run_seed, player, spec.seed).
std::unique_ptr<Learner> MakeLearner(const LearnerSpec& spec, std::size_t opponent_actions,
                                     std::uint64_t run_seed, int player);

}  // namespace fpcoord

#endif  // FPCOORD_LEARNER_H_
