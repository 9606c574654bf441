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

#include "fpcoord/learner.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "fpcoord/boltzmann.h"

namespace fpcoord {

namespace {

template <typename T>
T Field(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<double> DiagField(const nlohmann::json& doc, const char* key,
                              std::vector<double> fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& value = doc.at(key);
  if (value.is_number()) return {value.get<double>()};
  return Field<std::vector<double>>(doc, key, {});
}

std::string_view LearnerTypeName(LearnerType type) {
  switch (type) {
    case LearnerType::kFictitiousPlay:
      return "fp";
    case LearnerType::kEkfFictitiousPlay:
      return "ekf_fp";
    case LearnerType::kFixed:
      return "fixed";
    case LearnerType::kScripted:
      return "scripted";
  }
  return "ekf_fp";
}

std::vector<double> ToStd(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

LearnerSpec LearnerSpecFromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("learner: expected a JSON object");
  static constexpr std::array<std::string_view, 17> kKeys = {
      "type",      "tau",           "xi_diag",  "z_diag",  "d_base",    "d_scale",
      "noise_var", "obs_noise_schedule",        "tie_break", "seed",    "update_mode",
      "kappa0",    "init_mean",     "init_mean_std",      "init_cov", "action",  "actions"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw std::invalid_argument("field '" + key + "': unknown field");
    }
  }
  LearnerSpec spec;
  const std::string type = Field<std::string>(doc, "type", "ekf_fp");
  if (type == "fp") {
    spec.type = LearnerType::kFictitiousPlay;
  } else if (type == "ekf_fp") {
    spec.type = LearnerType::kEkfFictitiousPlay;
  } else if (type == "fixed") {
    spec.type = LearnerType::kFixed;
  } else if (type == "scripted") {
    spec.type = LearnerType::kScripted;
  } else {
    throw std::invalid_argument("field 'type': unknown learner type '" + type + "'");
  }

  spec.ekf.tau = Field(doc, "tau", spec.ekf.tau);
  spec.ekf.xi_diag = DiagField(doc, "xi_diag", spec.ekf.xi_diag);
  spec.ekf.z_diag = DiagField(doc, "z_diag", spec.ekf.z_diag);
  spec.ekf.d_base = Field(doc, "d_base", spec.ekf.d_base);
  spec.ekf.d_scale = Field(doc, "d_scale", spec.ekf.d_scale);
  spec.ekf.noise_var = Field(doc, "noise_var", spec.ekf.noise_var);
  try {
    spec.ekf.obs_noise_schedule = ParseObsNoiseSchedule(Field<std::string>(
        doc, "obs_noise_schedule", std::string(ObsNoiseScheduleName(spec.ekf.obs_noise_schedule))));
    spec.tie_break =
        ParseTieBreak(Field<std::string>(doc, "tie_break", std::string(TieBreakName(spec.tie_break))));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("learner: ") + e.what());
  }
  const std::string mode = Field<std::string>(doc, "update_mode", "generic");
  if (mode == "generic") {
    spec.update_mode = EkfUpdateMode::kGeneric;
  } else if (mode == "closed_form") {
    spec.update_mode = EkfUpdateMode::kClosedForm;
  } else {
    throw std::invalid_argument("field 'update_mode': unknown mode '" + mode + "'");
  }
  spec.seed = Field<std::uint64_t>(doc, "seed", 0);
  if (doc.contains("kappa0")) spec.kappa0 = Field<std::vector<double>>(doc, "kappa0", {});
  if (doc.contains("init_mean")) spec.init_mean = Field<std::vector<double>>(doc, "init_mean", {});
  spec.init_mean_std = Field(doc, "init_mean_std", spec.init_mean_std);
  spec.init_cov = Field(doc, "init_cov", spec.init_cov);
  spec.fixed_action = Field<std::size_t>(doc, "action", 0);
  spec.script = Field<std::vector<std::size_t>>(doc, "actions", {});

  if (spec.type == LearnerType::kScripted && spec.script.empty()) {
    throw std::invalid_argument("field 'actions': scripted learner needs at least one action");
  }
  if (!(spec.init_mean_std >= 0.0)) {
    throw std::invalid_argument("field 'init_mean_std': must be >= 0");
  }
  if (!(spec.init_cov > 0.0)) throw std::invalid_argument("field 'init_cov': must be positive");
  if (spec.type == LearnerType::kEkfFictitiousPlay) {
    try {
      // Dimension-free checks; action counts are checked in MakeLearner.
      EkfParams probe = spec.ekf;
      probe.Validate(std::max(probe.xi_diag.size(), probe.z_diag.size()));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("learner: ") + e.what());
    }
  }
  return spec;
}

nlohmann::ordered_json LearnerSpecToJson(const LearnerSpec& spec) {
  nlohmann::ordered_json doc;
  doc["type"] = LearnerTypeName(spec.type);
  doc["tau"] = spec.ekf.tau;
  doc["xi_diag"] = spec.ekf.xi_diag;
  doc["z_diag"] = spec.ekf.z_diag;
  doc["d_base"] = spec.ekf.d_base;
  doc["d_scale"] = spec.ekf.d_scale;
  doc["noise_var"] = spec.ekf.noise_var;
  doc["obs_noise_schedule"] = ObsNoiseScheduleName(spec.ekf.obs_noise_schedule);
  doc["update_mode"] = spec.update_mode == EkfUpdateMode::kGeneric ? "generic" : "closed_form";
  doc["tie_break"] = TieBreakName(spec.tie_break);
  doc["seed"] = spec.seed;
  if (spec.kappa0) doc["kappa0"] = *spec.kappa0;
  if (spec.init_mean) doc["init_mean"] = *spec.init_mean;
  doc["init_mean_std"] = spec.init_mean_std;
  doc["init_cov"] = spec.init_cov;
  if (spec.type == LearnerType::kFixed) doc["action"] = spec.fixed_action;
  if (spec.type == LearnerType::kScripted) doc["actions"] = spec.script;
  return doc;
}

nlohmann::ordered_json BeliefToJson(const BeliefSnapshot& snapshot) {
  nlohmann::ordered_json doc;
  doc["strategy"] = snapshot.strategy;
  if (!snapshot.mean.empty()) {
    doc["mean"] = snapshot.mean;
    doc["cov"] = snapshot.cov;
  }
  if (!snapshot.weights.empty()) doc["weights"] = snapshot.weights;
  if (snapshot.regularized) doc["regularized"] = true;
  return doc;
}

FictitiousPlayLearner::FictitiousPlayLearner(FictitiousPlayBelief belief, TieBreak tie_break,
                                             std::mt19937_64 rng)
    : belief_(std::move(belief)), tie_break_(tie_break), rng_(rng) {}

ActionId FictitiousPlayLearner::Decide(const NormalFormGame& game, int player) {
  const MixedStrategy opponent = FpStrategy(belief_);
  TieBreakRule tie{.policy = tie_break_, .current = current_, .rng = &rng_};
  current_ = BestResponse(game, player, std::span<const MixedStrategy>(&opponent, 1), tie);
  return current_;
}

void FictitiousPlayLearner::Observe(ActionId opponent_action) {
  ++t_;
  belief_ = FpUpdate(belief_, Observation{opponent_action, t_});
}

BeliefSnapshot FictitiousPlayLearner::Snapshot() const {
  const MixedStrategy strategy = FpStrategy(belief_);
  BeliefSnapshot snapshot;
  snapshot.strategy.assign(strategy.probs().begin(), strategy.probs().end());
  snapshot.weights = belief_.kappa();
  return snapshot;
}

EkfFpLearner::EkfFpLearner(PropensityBelief belief, EkfParams params, EkfUpdateMode mode,
                           TieBreak tie_break, std::mt19937_64 rng)
    : belief_(std::move(belief)),
      params_(std::move(params)),
      mode_(mode),
      tie_break_(tie_break),
      rng_(rng) {
  belief_.Validate();
  params_.Validate(belief_.mean.size());
  if (mode_ == EkfUpdateMode::kClosedForm && belief_.mean.size() != 2) {
    throw std::invalid_argument("closed_form update mode needs exactly two opponent actions");
  }
}

void EkfFpLearner::Predict() { belief_ = EkfPredict(belief_, params_, rng_); }

ActionId EkfFpLearner::Decide(const NormalFormGame& game, int player) {
  TieBreakRule tie{.policy = tie_break_, .current = current_, .rng = &rng_};
  current_ = EkfFpDecide(std::span<const PropensityBelief>(&belief_, 1), game, params_,
                         player, tie);
  return current_;
}

void EkfFpLearner::Observe(ActionId opponent_action) {
  ++t_;
  const Observation obs{opponent_action, t_};
  if (mode_ == EkfUpdateMode::kClosedForm) {
    belief_ = EkfUpdateClosedForm2x2(belief_, obs, params_, t_).belief;
    last_regularized_ = false;
  } else {
    EkfUpdateResult result = EkfUpdate(belief_, obs, params_, t_);
    belief_ = std::move(result.belief);
    last_regularized_ = result.regularized;
  }
}

BeliefSnapshot EkfFpLearner::Snapshot() const {
  BeliefSnapshot snapshot;
  const MixedStrategy strategy = Boltzmann(belief_.mean, params_.tau);
  snapshot.strategy.assign(strategy.probs().begin(), strategy.probs().end());
  snapshot.mean = ToStd(belief_.mean);
  for (Eigen::Index r = 0; r < belief_.cov.rows(); ++r) {
    snapshot.cov.push_back(ToStd(belief_.cov.row(r).transpose()));
  }
  snapshot.regularized = last_regularized_;
  return snapshot;
}

ScriptedLearner::ScriptedLearner(std::vector<std::size_t> script) : script_(std::move(script)) {
  if (script_.empty()) throw std::invalid_argument("ScriptedLearner: empty script");
}

ActionId ScriptedLearner::Decide(const NormalFormGame& game, int player) {
  const std::size_t action = script_[std::min(next_, script_.size() - 1)];
  ++next_;
  if (action >= game.num_actions(player)) {
    throw std::out_of_range("ScriptedLearner: action " + std::to_string(action) +
                            " outside the action set");
  }
  current_ = ActionId{action};
  return current_;
}

std::unique_ptr<Learner> MakeLearner(const LearnerSpec& spec, std::size_t opponent_actions,
                                     std::uint64_t run_seed, int player) {
  std::seed_seq seq{static_cast<std::uint32_t>(run_seed),
                    static_cast<std::uint32_t>(run_seed >> 32),
                    static_cast<std::uint32_t>(player),
                    static_cast<std::uint32_t>(spec.seed),
                    static_cast<std::uint32_t>(spec.seed >> 32)};
  std::mt19937_64 rng(seq);

  switch (spec.type) {
    case LearnerType::kFictitiousPlay: {
      std::vector<double> kappa;
      if (spec.kappa0) {
        kappa = *spec.kappa0;
        if (kappa.size() != opponent_actions) {
          throw std::invalid_argument("field 'kappa0': expected " +
                                      std::to_string(opponent_actions) + " weights");
        }
      } else {
        // Uniform on (0, 1]: 1 - U[0, 1).
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t k = 0; k < opponent_actions; ++k) kappa.push_back(1.0 - unit(rng));
      }
      FictitiousPlayBelief belief(std::move(kappa));
      if (!(belief.total() > 0.0)) {
        throw std::invalid_argument("field 'kappa0': weights must not all be zero");
      }
      return std::make_unique<FictitiousPlayLearner>(std::move(belief), spec.tie_break, rng);
    }
    case LearnerType::kEkfFictitiousPlay: {
      PropensityBelief belief = PropensityBelief::Initial(opponent_actions, spec.init_cov);
      if (spec.init_mean) {
        if (spec.init_mean->size() != opponent_actions) {
          throw std::invalid_argument("field 'init_mean': expected " +
                                      std::to_string(opponent_actions) + " entries");
        }
        for (std::size_t k = 0; k < opponent_actions; ++k) belief.mean[k] = (*spec.init_mean)[k];
      } else if (spec.init_mean_std > 0.0) {
        std::normal_distribution<double> prior(0.0, spec.init_mean_std);
        for (std::size_t k = 0; k < opponent_actions; ++k) belief.mean[k] = prior(rng);
      }
      return std::make_unique<EkfFpLearner>(std::move(belief), spec.ekf, spec.update_mode,
                                            spec.tie_break, rng);
    }
    case LearnerType::kFixed:
      return std::make_unique<ScriptedLearner>(std::vector<std::size_t>{spec.fixed_action});
    case LearnerType::kScripted:
      return std::make_unique<ScriptedLearner>(spec.script);
  }
  throw std::logic_error("MakeLearner: unhandled learner type");
}

}  // namespace fpcoord
