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

#include "fpcoord/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace fpcoord {

MixedStrategy::MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::invalid_argument("MixedStrategy: empty probability vector");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("MixedStrategy: component outside [0, inf)");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw std::invalid_argument("MixedStrategy: components sum to " +
                                std::to_string(sum));
  }
}

MixedStrategy MixedStrategy::Pure(std::size_t num_actions, ActionId action) {
  if (action.index >= num_actions) {
    throw std::out_of_range("MixedStrategy::Pure: action out of range");
  }
  std::vector<double> probs(num_actions, 0.0);
  probs[action.index] = 1.0;
  return MixedStrategy(std::move(probs));
}

MixedStrategy MixedStrategy::Uniform(std::size_t num_actions) {
  if (num_actions == 0) throw std::invalid_argument("MixedStrategy::Uniform: no actions");
  return MixedStrategy(std::vector<double>(num_actions, 1.0 / num_actions));
}

NormalFormGame NormalFormGame::Dense(std::string name,
                                     std::vector<std::vector<std::string>> action_labels,
                                     std::vector<std::vector<double>> payoffs,
                                     GameTraits traits) {
  if (action_labels.size() < 2) {
    throw std::invalid_argument("NormalFormGame: need at least two players");
  }
  NormalFormGame game;
  game.name_ = std::move(name);
  for (const auto& labels : action_labels) {
    if (labels.empty()) {
      throw std::invalid_argument("NormalFormGame: every player needs an action");
    }
    game.action_counts_.push_back(labels.size());
  }
  game.action_labels_ = std::move(action_labels);
  const std::size_t joint_count = game.num_joint_actions();
  if (payoffs.size() != joint_count) {
    throw std::invalid_argument("NormalFormGame: payoff table has " +
                                std::to_string(payoffs.size()) + " entries, expected " +
                                std::to_string(joint_count));
  }
  for (const auto& entry : payoffs) {
    if (entry.size() != game.action_counts_.size()) {
      throw std::invalid_argument("NormalFormGame: payoff entry has wrong player count");
    }
    for (double r : entry) {
      if (!std::isfinite(r)) throw std::invalid_argument("NormalFormGame: non-finite payoff");
    }
  }
  game.dense_ = std::move(payoffs);
  game.traits_ = traits;
  game.VerifyTraits();
  return game;
}

NormalFormGame NormalFormGame::FromCallback(std::string name,
                                            std::vector<std::size_t> action_counts,
                                            PayoffFn payoff, GameTraits traits) {
  if (action_counts.size() < 2) {
    throw std::invalid_argument("NormalFormGame: need at least two players");
  }
  if (!payoff) throw std::invalid_argument("NormalFormGame: empty payoff callback");
  NormalFormGame game;
  game.name_ = std::move(name);
  for (std::size_t count : action_counts) {
    if (count == 0) throw std::invalid_argument("NormalFormGame: every player needs an action");
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < count; ++k) labels.push_back("a" + std::to_string(k));
    game.action_labels_.push_back(std::move(labels));
  }
  game.action_counts_ = std::move(action_counts);
  game.callback_ = std::move(payoff);
  game.traits_ = traits;
  if (game.num_joint_actions() <= kMaxEnumeratedJointActions) game.VerifyTraits();
  return game;
}

std::size_t NormalFormGame::num_joint_actions() const {
  std::size_t count = 1;
  for (std::size_t n : action_counts_) {
    if (count > std::numeric_limits<std::size_t>::max() / n) {
      throw std::overflow_error("NormalFormGame: joint action count overflows");
    }
    count *= n;
  }
  return count;
}

void NormalFormGame::ValidateJoint(std::span<const ActionId> joint) const {
  if (joint.size() != action_counts_.size()) {
    throw std::invalid_argument("NormalFormGame: joint action has wrong player count");
  }
  for (std::size_t p = 0; p < joint.size(); ++p) {
    if (joint[p].index >= action_counts_[p]) {
      throw std::out_of_range("NormalFormGame: action " + std::to_string(joint[p].index) +
                              " out of range for player " + std::to_string(p));
    }
  }
}

std::size_t NormalFormGame::joint_index(std::span<const ActionId> joint) const {
  ValidateJoint(joint);
  std::size_t index = 0;
  for (std::size_t p = 0; p < joint.size(); ++p) {
    index = index * action_counts_[p] + joint[p].index;
  }
  return index;
}

JointAction NormalFormGame::joint_from_index(std::size_t index) const {
  JointAction joint(action_counts_.size());
  for (std::size_t p = action_counts_.size(); p-- > 0;) {
    joint[p] = ActionId{index % action_counts_[p]};
    index /= action_counts_[p];
  }
  return joint;
}

std::vector<double> NormalFormGame::payoffs(std::span<const ActionId> joint) const {
  const std::size_t index = joint_index(joint);
  if (is_dense()) return dense_[index];
  std::vector<double> rewards = callback_(joint);
  if (rewards.size() != action_counts_.size()) {
    throw std::logic_error("NormalFormGame: payoff callback returned wrong player count");
  }
  return rewards;
}

double NormalFormGame::payoff(int player, std::span<const ActionId> joint) const {
  if (player < 0 || player >= num_players()) {
    throw std::out_of_range("NormalFormGame: player out of range");
  }
  if (is_dense()) return dense_[joint_index(joint)][player];
  return payoffs(joint)[player];
}

bool NormalFormGame::CheckCommonInterest() const {
  for (std::size_t j = 0; j < num_joint_actions(); ++j) {
    const JointAction joint = joint_from_index(j);
    const std::vector<double> rewards = payoffs(joint);
    for (double r : rewards) {
      if (r != rewards.front()) return false;
    }
  }
  return true;
}

bool NormalFormGame::CheckSymmetric() const {
  if (num_players() != 2 || action_counts_[0] != action_counts_[1]) return false;
  const std::size_t n = action_counts_[0];
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const JointAction ab{ActionId{a}, ActionId{b}};
      const JointAction ba{ActionId{b}, ActionId{a}};
      if (payoff(0, ab) != payoff(1, ba)) return false;
    }
  }
  return true;
}

void NormalFormGame::VerifyTraits() const {
  if (traits_.common_interest && !CheckCommonInterest()) {
    throw std::invalid_argument("NormalFormGame '" + name_ +
                                "': flagged common_interest but payoffs differ");
  }
  if (traits_.symmetric && !CheckSymmetric()) {
    throw std::invalid_argument("NormalFormGame '" + name_ +
                                "': flagged symmetric but identity swap changes payoff");
  }
}

NormalFormGame MakeTcasGame(int num_altitudes, double a) {
  if (num_altitudes < 2) {
    throw std::invalid_argument("MakeTcasGame: need at least two altitudes, got " +
                                std::to_string(num_altitudes));
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("MakeTcasGame: reward must be positive");
  }
  std::vector<std::string> labels;
  if (num_altitudes == 2) {
    labels = {"High", "Low"};
  } else {
    for (int k = 0; k < num_altitudes; ++k) labels.push_back("alt" + std::to_string(k));
  }
  std::vector<std::vector<double>> payoffs;
  for (int i = 0; i < num_altitudes; ++i) {
    for (int j = 0; j < num_altitudes; ++j) {
      const double r = i != j ? a : 0.0;
      payoffs.push_back({r, r});
    }
  }
  return NormalFormGame::Dense("tcas" + std::to_string(num_altitudes), {labels, labels},
                               std::move(payoffs),
                               GameTraits{.common_interest = true, .symmetric = true});
}

NormalFormGame MakeMatchingPennies() {
  return NormalFormGame::Dense("matching_pennies", {{"Heads", "Tails"}, {"Heads", "Tails"}},
                               {{1, -1}, {-1, 1}, {-1, 1}, {1, -1}});
}

NormalFormGame MakeShapleyGame() {
  const double row[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  const double col[3][3] = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  std::vector<std::vector<double>> payoffs;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) payoffs.push_back({row[i][j], col[i][j]});
  }
  std::vector<std::string> labels = {"a0", "a1", "a2"};
  return NormalFormGame::Dense("shapley", {labels, labels}, std::move(payoffs));
}

NormalFormGame MakeGameByName(std::string_view name) {
  if (name == "tcas2") return MakeTcasGame(2);
  if (name == "tcas3") return MakeTcasGame(3);
  if (name == "matching_pennies") return MakeMatchingPennies();
  if (name == "shapley") return MakeShapleyGame();
  throw std::invalid_argument("unknown game '" + std::string(name) + "'");
}

namespace {

void CheckOpponents(const NormalFormGame& game, int player,
                    std::span<const MixedStrategy> others) {
  if (player < 0 || player >= game.num_players()) {
    throw std::out_of_range("player out of range");
  }
  if (static_cast<int>(others.size()) != game.num_players() - 1) {
    throw std::invalid_argument("expected one strategy per opponent");
  }
  std::size_t k = 0;
  for (int p = 0; p < game.num_players(); ++p) {
    if (p == player) continue;
    if (others[k].size() != game.num_actions(p)) {
      throw std::invalid_argument("strategy of player " + std::to_string(p) +
                                  " has wrong dimension");
    }
    ++k;
  }
}

}  // namespace

double ExpectedReward(const NormalFormGame& game, int player, const MixedStrategy& own,
                      std::span<const MixedStrategy> others) {
  CheckOpponents(game, player, others);
  if (own.size() != game.num_actions(player)) {
    throw std::invalid_argument("own strategy has wrong dimension");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < game.num_joint_actions(); ++j) {
    const JointAction joint = game.joint_from_index(j);
    double weight = 1.0;
    std::size_t k = 0;
    for (int p = 0; p < game.num_players() && weight != 0.0; ++p) {
      weight *= p == player ? own[joint[p].index] : others[k++][joint[p].index];
    }
    if (weight != 0.0) total += weight * game.payoff(player, joint);
  }
  return total;
}

std::string_view TieBreakName(TieBreak policy) {
  switch (policy) {
    case TieBreak::kFirst:
      return "first";
    case TieBreak::kStay:
      return "stay";
    case TieBreak::kUniformRandom:
      return "uniform_random";
  }
  return "first";
}

TieBreak ParseTieBreak(std::string_view name) {
  if (name == "first") return TieBreak::kFirst;
  if (name == "stay") return TieBreak::kStay;
  if (name == "uniform_random") return TieBreak::kUniformRandom;
  throw std::invalid_argument("unknown tie_break '" + std::string(name) + "'");
}

ActionId BestResponse(const NormalFormGame& game, int player,
                      std::span<const MixedStrategy> others, const TieBreakRule& tie) {
  CheckOpponents(game, player, others);
  const std::size_t n = game.num_actions(player);
  std::vector<double> values(n);
  for (std::size_t a = 0; a < n; ++a) {
    values[a] = ExpectedReward(game, player, MixedStrategy::Pure(n, ActionId{a}), others);
  }
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<ActionId> maximisers;
  for (std::size_t a = 0; a < n; ++a) {
    if (best - values[a] <= kTieTolerance) maximisers.push_back(ActionId{a});
  }
  if (maximisers.size() == 1) return maximisers.front();

  switch (tie.policy) {
    case TieBreak::kFirst:
      return maximisers.front();
    case TieBreak::kStay:
      if (tie.current &&
          std::find(maximisers.begin(), maximisers.end(), *tie.current) != maximisers.end()) {
        return *tie.current;
      }
      return maximisers.front();
    case TieBreak::kUniformRandom: {
      if (tie.rng == nullptr) {
        throw std::invalid_argument("uniform_random tie break needs a random source");
      }
      std::uniform_int_distribution<std::size_t> pick(0, maximisers.size() - 1);
      return maximisers[pick(*tie.rng)];
    }
  }
  return maximisers.front();
}

std::set<JointAction> EnumeratePureNash(const NormalFormGame& game) {
  const std::size_t joint_count = game.num_joint_actions();
  if (joint_count > kMaxEnumeratedJointActions) {
    throw std::length_error("EnumeratePureNash: " + std::to_string(joint_count) +
                            " joint actions exceed the enumeration guard");
  }
  std::set<JointAction> equilibria;
  for (std::size_t j = 0; j < joint_count; ++j) {
    const JointAction joint = game.joint_from_index(j);
    bool stable = true;
    for (int p = 0; p < game.num_players() && stable; ++p) {
      const double current = game.payoff(p, joint);
      JointAction deviation = joint;
      for (std::size_t a = 0; a < game.num_actions(p); ++a) {
        if (a == joint[p].index) continue;
        deviation[p] = ActionId{a};
        if (game.payoff(p, deviation) > current + kTieTolerance) {
          stable = false;
          break;
        }
      }
    }
    if (stable) equilibria.insert(joint);
  }
  return equilibria;
}

}  // namespace fpcoord
