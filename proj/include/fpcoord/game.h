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

#ifndef FPCOORD_GAME_H_
#define FPCOORD_GAME_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fpcoord {

// Ties between expected rewards closer than this are treated as exact.
inline constexpr double kTieTolerance = 1e-12;

// Simplex tolerance on the sum of a mixed strategy.
inline constexpr double kSimplexTolerance = 1e-9;

// Upper bound on the joint-action count for exhaustive enumeration.
inline constexpr std::size_t kMaxEnumeratedJointActions = 1'000'000;

// Index of an action within one player's action set.
struct ActionId {
  std::size_t index = 0;

  friend auto operator<=>(const ActionId&, const ActionId&) = default;
};

using JointAction = std::vector<ActionId>;

// Probability vector over one player's action set. Construction validates
// the simplex constraints, so every instance is a valid distribution.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Pure(std::size_t num_actions, ActionId action);
  static MixedStrategy Uniform(std::size_t num_actions);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> probs_;
};

struct GameTraits {
  bool common_interest = false;
  bool symmetric = false;
};

// Finite normal-form game. Two-player games keep a dense payoff table; games
// with more players may be backed by a payoff callback.
class NormalFormGame {
 public:
  using PayoffFn = std::function<std::vector<double>(std::span<const ActionId>)>;

  // `payoffs[j][p]` is player p's reward at the joint action with flat
  // index j (row-major, player 0 slowest). Flagged traits are verified.
  static NormalFormGame Dense(std::string name,
                              std::vector<std::vector<std::string>> action_labels,
                              std::vector<std::vector<double>> payoffs,
                              GameTraits traits = {});

  static NormalFormGame FromCallback(std::string name,
                                     std::vector<std::size_t> action_counts,
                                     PayoffFn payoff, GameTraits traits = {});

  const std::string& name() const { return name_; }
  int num_players() const { return static_cast<int>(action_counts_.size()); }
  std::size_t num_actions(int player) const { return action_counts_.at(player); }
  const std::vector<std::size_t>& action_counts() const { return action_counts_; }
  const std::vector<std::string>& action_labels(int player) const {
    return action_labels_.at(player);
  }
  std::size_t num_joint_actions() const;
  bool is_dense() const { return !dense_.empty(); }
  const GameTraits& traits() const { return traits_; }

  double payoff(int player, std::span<const ActionId> joint) const;
  std::vector<double> payoffs(std::span<const ActionId> joint) const;

  std::size_t joint_index(std::span<const ActionId> joint) const;
  JointAction joint_from_index(std::size_t index) const;

  // Exhaustive checks, independent of the declared traits.
  bool CheckCommonInterest() const;
  bool CheckSymmetric() const;

 private:
  NormalFormGame() = default;
  void ValidateJoint(std::span<const ActionId> joint) const;
  void VerifyTraits() const;

  std::string name_;
  std::vector<std::size_t> action_counts_;
  std::vector<std::vector<std::string>> action_labels_;
  std::vector<std::vector<double>> dense_;
  PayoffFn callback_;
  GameTraits traits_;
};

// Two-player common-interest game over `num_altitudes` altitudes: both players
// receive `a` when their altitudes differ and 0 otherwise. For two altitudes
// action 0 is "High" and action 1 is "Low".
NormalFormGame MakeTcasGame(int num_altitudes, double a = 1.0);

NormalFormGame MakeMatchingPennies();

// Shapley's 3x3 game; classic fictitious play cycles on it.
NormalFormGame MakeShapleyGame();

// "tcas2", "tcas3", "matching_pennies" or "shapley".
NormalFormGame MakeGameByName(std::string_view name);

// Expected reward of `player` playing `own` while the opponents (in player
// order, skipping `player`) play `others`.
double ExpectedReward(const NormalFormGame& game, int player,
                      const MixedStrategy& own,
                      std::span<const MixedStrategy> others);

enum class TieBreak { kFirst, kStay, kUniformRandom };

std::string_view TieBreakName(TieBreak policy);
TieBreak ParseTieBreak(std::string_view name);

struct TieBreakRule {
  TieBreak policy = TieBreak::kFirst;
  // Action kept under kStay when it is among the maximisers.
  std::optional<ActionId> current;
  // Required for kUniformRandom; not owned.
  std::mt19937_64* rng = nullptr;
};

// Pure best response. Among actions whose expected reward is within
// kTieTolerance of the maximum, `tie` picks one.
ActionId BestResponse(const NormalFormGame& game, int player,
                      std::span<const MixedStrategy> others,
                      const TieBreakRule& tie = {});

// Joint actions where no player has a strictly improving unilateral pure
// deviation. Throws std::length_error above kMaxEnumeratedJointActions.
std::set<JointAction> EnumeratePureNash(const NormalFormGame& game);

}  // namespace fpcoord

#endif  // FPCOORD_GAME_H_
