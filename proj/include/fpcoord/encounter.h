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

#ifndef FPCOORD_ENCOUNTER_H_
#define FPCOORD_ENCOUNTER_H_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>

#include "fpcoord/game.h"
#include "fpcoord/learner.h"
#include "fpcoord/trace.h"
#include "json.hpp"

namespace fpcoord {

// Altitude bands share indices with TCAS actions: 0 is High, 1 is Low.
inline constexpr std::size_t kHighBand = 0;
inline constexpr std::size_t kLowBand = 1;

enum class Heading { kForward, kBackward };
enum class Phase { kHovering, kChangingAltitude, kPassing, kDone };

std::string_view PhaseName(Phase phase);

struct UavState {
  // Band used for visibility. While changing altitude this stays the origin
  // band until the manoeuvre completes.
  std::size_t altitude_band = kLowBand;
  std::size_t target_band = kLowBand;
  double longitudinal_pos = 0.0;
  double start_pos = 0.0;
  Heading heading = Heading::kForward;
  Phase phase = Phase::kHovering;
  int change_ticks_left = 0;
};

struct EncounterConfig {
  double tick_seconds = 0.1;
  double epoch_seconds = 8.0;
  double absence_seconds = 4.0;
  double altitude_separation_m = 1.0;
  double corridor_length_m = 4.0;
  double pass_speed_mps = 0.5;
  double altitude_change_seconds = 2.0;
  int max_epochs = 20;
  std::uint64_t seed = 0;
  int num_bands = 2;
  double collision_radius_m = 0.5;
  std::array<std::size_t, 2> initial_bands = {kLowBand, kLowBand};
  // Delay of each UAV's decision clock; zero keeps decisions synchronous.
  std::array<double, 2> epoch_offset_seconds = {0.0, 0.0};

  // Throws ConfigError naming the field.
  void Validate() const;

  int TicksPerEpoch() const;
  int AbsenceTicks() const;
  int AltitudeChangeTicks() const;
  int OffsetTicks(int uav) const;
};

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument("field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Unknown keys are rejected. Validates before returning.
EncounterConfig EncounterConfigFromJson(const nlohmann::json& doc);
nlohmann::ordered_json EncounterConfigToJson(const EncounterConfig& config);

// Counts consecutive ticks without sight of the opponent. A visible tick
// resets it; frozen ticks neither count nor reset unless visible.
class AbsenceTimer {
 public:
  explicit AbsenceTimer(int threshold_ticks = 0) : threshold_(threshold_ticks) {}

  // Returns true when the threshold is reached on this tick.
  bool Tick(bool visible, bool frozen);
  int ticks() const { return ticks_; }
  bool expired() const { return ticks_ >= threshold_; }

 private:
  int threshold_;
  int ticks_ = 0;
};

struct EncounterState {
  std::array<UavState, 2> uavs;
  std::int64_t tick = 0;
  double sim_time = 0.0;
  std::array<AbsenceTimer, 2> absence;
  // Ticks since the last decision, and ticks still to wait before the
  // decision clock starts.
  std::array<int, 2> epoch_clock = {0, 0};
  std::array<int, 2> clock_delay = {0, 0};
  std::array<int, 2> epochs_done = {0, 0};
  bool collision = false;
};

EncounterState MakeInitialState(const EncounterConfig& config);

// Opponent in the observer's band, ahead along its heading, neither Done.
bool Visible(const UavState& observer, const UavState& other);

class AmbiguousInference : public std::logic_error {
 public:
  AmbiguousInference()
      : std::logic_error("ambiguous_inference: cannot infer a band among more than two") {}
};

// Seen means same band; unseen means the other band. Only defined for two
// bands.
ActionId InferOpponentAction(const UavState& observer, bool saw_opponent, int num_bands = 2);

using LearnerPair = std::array<std::unique_ptr<Learner>, 2>;

// Advances one tick: completes altitude changes, moves passing UAVs,
// updates visibility and absence timers (Hovering -> Passing on expiry),
// runs a learner iteration at each epoch boundary, then checks collision.
void Step(EncounterState& state, const EncounterConfig& config, LearnerPair& learners,
          DecisionTrace& trace);

bool EncounterFinished(const EncounterState& state, const EncounterConfig& config);

// Runs ticks until both UAVs are Done, a collision occurs, or the epoch
// budget is spent. Learner random streams derive from config.seed.
DecisionTrace RunEncounter(const EncounterConfig& config, std::span<const LearnerSpec> learners);

}  // namespace fpcoord

#endif  // FPCOORD_ENCOUNTER_H_
