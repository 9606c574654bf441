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

#include "fpcoord/encounter.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace fpcoord {

namespace {

constexpr double kDivisibilityTolerance = 1e-9;

int WholeTicks(double seconds, double tick, const char* field) {
  const double ratio = seconds / tick;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > kDivisibilityTolerance * std::max(1.0, rounded)) {
    throw ConfigError(field, "must be a whole number of ticks");
  }
  return static_cast<int>(rounded);
}

void RequirePositive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(field, "must be positive");
}

// Times are tick multiples; rounding keeps printed values free of drift.
double TickTime(std::int64_t tick, double tick_seconds) {
  return std::round(static_cast<double>(tick) * tick_seconds * 1e9) / 1e9;
}

std::size_t CommittedBand(const UavState& uav) {
  return uav.phase == Phase::kChangingAltitude ? uav.target_band : uav.altitude_band;
}

void EmitPhaseChange(DecisionTrace& trace, double time, int uav, Phase from, Phase to,
                     const UavState& state) {
  TraceEvent event{time, uav, EventKind::kPhaseChange, nlohmann::ordered_json::object()};
  event.payload["from"] = PhaseName(from);
  event.payload["to"] = PhaseName(to);
  event.payload["band"] = state.altitude_band;
  event.payload["x"] = std::round(state.longitudinal_pos * 1e9) / 1e9;
  trace.Append(std::move(event));
}

const std::set<std::string>& ConfigKeys() {
  static const std::set<std::string> keys = {
      "tick_seconds",        "epoch_seconds",     "absence_seconds",
      "altitude_separation_m", "corridor_length_m", "pass_speed_mps",
      "altitude_change_seconds", "max_epochs",    "seed",
      "num_bands",           "collision_radius_m", "initial_bands",
      "epoch_offset_seconds"};
  return keys;
}

template <typename T>
T ConfigField(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(key, e.what());
  }
}

}  // namespace

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kHovering:
      return "hovering";
    case Phase::kChangingAltitude:
      return "changing_altitude";
    case Phase::kPassing:
      return "passing";
    case Phase::kDone:
      return "done";
  }
  return "hovering";
}

void EncounterConfig::Validate() const {
  RequirePositive(tick_seconds, "tick_seconds");
  RequirePositive(epoch_seconds, "epoch_seconds");
  RequirePositive(absence_seconds, "absence_seconds");
  RequirePositive(altitude_separation_m, "altitude_separation_m");
  RequirePositive(corridor_length_m, "corridor_length_m");
  RequirePositive(pass_speed_mps, "pass_speed_mps");
  RequirePositive(altitude_change_seconds, "altitude_change_seconds");
  if (absence_seconds >= epoch_seconds) {
    throw ConfigError("absence_seconds", "must be shorter than epoch_seconds");
  }
  if (altitude_change_seconds >= epoch_seconds) {
    throw ConfigError("altitude_change_seconds", "must be shorter than epoch_seconds");
  }
  WholeTicks(epoch_seconds, tick_seconds, "epoch_seconds");
  WholeTicks(absence_seconds, tick_seconds, "absence_seconds");
  WholeTicks(altitude_change_seconds, tick_seconds, "altitude_change_seconds");
  if (max_epochs < 1) throw ConfigError("max_epochs", "must be at least 1");
  if (num_bands != 2) {
    throw ConfigError("num_bands", "visibility inference needs exactly two bands");
  }
  if (!(collision_radius_m >= 0.0)) throw ConfigError("collision_radius_m", "must be >= 0");
  for (std::size_t band : initial_bands) {
    if (band >= static_cast<std::size_t>(num_bands)) {
      throw ConfigError("initial_bands", "band out of range");
    }
  }
  for (double offset : epoch_offset_seconds) {
    if (!(offset >= 0.0) || offset >= epoch_seconds) {
      throw ConfigError("epoch_offset_seconds", "must lie in [0, epoch_seconds)");
    }
    WholeTicks(offset, tick_seconds, "epoch_offset_seconds");
  }
}

int EncounterConfig::TicksPerEpoch() const {
  return WholeTicks(epoch_seconds, tick_seconds, "epoch_seconds");
}
int EncounterConfig::AbsenceTicks() const {
  return WholeTicks(absence_seconds, tick_seconds, "absence_seconds");
}
int EncounterConfig::AltitudeChangeTicks() const {
  return WholeTicks(altitude_change_seconds, tick_seconds, "altitude_change_seconds");
}
int EncounterConfig::OffsetTicks(int uav) const {
  return WholeTicks(epoch_offset_seconds.at(uav), tick_seconds, "epoch_offset_seconds");
}

EncounterConfig EncounterConfigFromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("encounter", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!ConfigKeys().contains(key)) throw ConfigError(key, "unknown field");
  }
  EncounterConfig c;
  c.tick_seconds = ConfigField(doc, "tick_seconds", c.tick_seconds);
  c.epoch_seconds = ConfigField(doc, "epoch_seconds", c.epoch_seconds);
  c.absence_seconds = ConfigField(doc, "absence_seconds", c.absence_seconds);
  c.altitude_separation_m = ConfigField(doc, "altitude_separation_m", c.altitude_separation_m);
  c.corridor_length_m = ConfigField(doc, "corridor_length_m", c.corridor_length_m);
  c.pass_speed_mps = ConfigField(doc, "pass_speed_mps", c.pass_speed_mps);
  c.altitude_change_seconds =
      ConfigField(doc, "altitude_change_seconds", c.altitude_change_seconds);
  c.max_epochs = ConfigField(doc, "max_epochs", c.max_epochs);
  c.seed = ConfigField(doc, "seed", c.seed);
  c.num_bands = ConfigField(doc, "num_bands", c.num_bands);
  c.collision_radius_m = ConfigField(doc, "collision_radius_m", c.collision_radius_m);
  c.initial_bands = ConfigField(doc, "initial_bands", c.initial_bands);
  c.epoch_offset_seconds = ConfigField(doc, "epoch_offset_seconds", c.epoch_offset_seconds);
  c.Validate();
  return c;
}

nlohmann::ordered_json EncounterConfigToJson(const EncounterConfig& c) {
  nlohmann::ordered_json doc;
  doc["tick_seconds"] = c.tick_seconds;
  doc["epoch_seconds"] = c.epoch_seconds;
  doc["absence_seconds"] = c.absence_seconds;
  doc["altitude_separation_m"] = c.altitude_separation_m;
  doc["corridor_length_m"] = c.corridor_length_m;
  doc["pass_speed_mps"] = c.pass_speed_mps;
  doc["altitude_change_seconds"] = c.altitude_change_seconds;
  doc["max_epochs"] = c.max_epochs;
  doc["seed"] = c.seed;
  doc["num_bands"] = c.num_bands;
  doc["collision_radius_m"] = c.collision_radius_m;
  doc["initial_bands"] = c.initial_bands;
  doc["epoch_offset_seconds"] = c.epoch_offset_seconds;
  return doc;
}

bool AbsenceTimer::Tick(bool visible, bool frozen) {
  if (visible) {
    ticks_ = 0;
    return false;
  }
  if (frozen) return false;
  ++ticks_;
  return ticks_ == threshold_;
}

EncounterState MakeInitialState(const EncounterConfig& config) {
  config.Validate();
  EncounterState state;
  for (int i = 0; i < 2; ++i) {
    UavState& uav = state.uavs[i];
    uav.altitude_band = config.initial_bands[i];
    uav.target_band = uav.altitude_band;
    uav.heading = i == 0 ? Heading::kForward : Heading::kBackward;
    uav.start_pos = i == 0 ? 0.0 : config.corridor_length_m;
    uav.longitudinal_pos = uav.start_pos;
    state.absence[i] = AbsenceTimer(config.AbsenceTicks());
    state.clock_delay[i] = config.OffsetTicks(i);
  }
  return state;
}

bool Visible(const UavState& observer, const UavState& other) {
  if (observer.phase == Phase::kDone || other.phase == Phase::kDone) return false;
  if (observer.altitude_band != other.altitude_band) return false;
  return observer.heading == Heading::kForward
             ? other.longitudinal_pos > observer.longitudinal_pos
             : other.longitudinal_pos < observer.longitudinal_pos;
}

ActionId InferOpponentAction(const UavState& observer, bool saw_opponent, int num_bands) {
  if (num_bands != 2) throw AmbiguousInference();
  if (observer.altitude_band > 1) throw std::out_of_range("observer band out of range");
  return ActionId{saw_opponent ? observer.altitude_band : 1 - observer.altitude_band};
}

namespace {

void Decide(EncounterState& state, const EncounterConfig& config, Learner& learner, int i,
            int epoch, const NormalFormGame& game, DecisionTrace& trace) {
  UavState& self = state.uavs[i];
  const UavState& other = state.uavs[1 - i];
  const bool saw = Visible(self, other);
  const ActionId inferred = InferOpponentAction(self, saw, config.num_bands);

  TraceEvent observation{state.sim_time, i, EventKind::kObservation,
                         nlohmann::ordered_json::object()};
  observation.payload["epoch"] = epoch;
  observation.payload["saw"] = saw;
  observation.payload["inferred"] = inferred.index;
  trace.Append(std::move(observation));

  // The band held through the last window is the opponent's previous
  // action; fold it in before predicting and choosing the next one.
  learner.Observe(inferred);
  learner.Predict();
  learner.set_current_action(ActionId{self.altitude_band});
  const ActionId action = learner.Decide(game, i);
  const BeliefSnapshot belief = learner.Snapshot();

  TraceEvent decision{state.sim_time, i, EventKind::kDecision, nlohmann::ordered_json::object()};
  decision.payload["epoch"] = epoch;
  decision.payload["action"] = action.index;
  decision.payload["label"] = game.action_labels(i).at(action.index);
  decision.payload["previous"] = self.altitude_band;
  if (!belief.strategy.empty()) decision.payload["strategy"] = belief.strategy;
  if (!belief.mean.empty()) decision.payload["mean"] = belief.mean;
  if (!belief.weights.empty()) decision.payload["weights"] = belief.weights;
  trace.Append(std::move(decision));

  if (action.index != self.altitude_band) {
    self.target_band = action.index;
    self.change_ticks_left = config.AltitudeChangeTicks();
    self.phase = Phase::kChangingAltitude;
    EmitPhaseChange(trace, state.sim_time, i, Phase::kHovering, Phase::kChangingAltitude, self);
  }
}

}  // namespace

void Step(EncounterState& state, const EncounterConfig& config, LearnerPair& learners,
          DecisionTrace& trace) {
  if (state.collision) return;
  ++state.tick;
  state.sim_time = TickTime(state.tick, config.tick_seconds);
  const double dt = config.tick_seconds;

  for (int i = 0; i < 2; ++i) {
    UavState& uav = state.uavs[i];
    if (uav.phase == Phase::kChangingAltitude && --uav.change_ticks_left <= 0) {
      uav.altitude_band = uav.target_band;
      uav.change_ticks_left = 0;
      uav.phase = Phase::kHovering;
      EmitPhaseChange(trace, state.sim_time, i, Phase::kChangingAltitude, Phase::kHovering, uav);
    }
  }

  for (int i = 0; i < 2; ++i) {
    UavState& uav = state.uavs[i];
    if (uav.phase != Phase::kPassing) continue;
    const double direction = uav.heading == Heading::kForward ? 1.0 : -1.0;
    uav.longitudinal_pos += direction * config.pass_speed_mps * dt;
    if (std::abs(uav.longitudinal_pos - uav.start_pos) >= config.corridor_length_m - 1e-9) {
      uav.phase = Phase::kDone;
      EmitPhaseChange(trace, state.sim_time, i, Phase::kPassing, Phase::kDone, uav);
    }
  }

  std::array<bool, 2> saw{};
  for (int i = 0; i < 2; ++i) saw[i] = Visible(state.uavs[i], state.uavs[1 - i]);
  for (int i = 0; i < 2; ++i) {
    UavState& uav = state.uavs[i];
    const UavState& other = state.uavs[1 - i];
    const bool observing = uav.phase == Phase::kHovering || uav.phase == Phase::kChangingAltitude;
    if (!observing) continue;
    if (other.phase == Phase::kHovering || other.phase == Phase::kChangingAltitude) {
      if (InferOpponentAction(uav, saw[i], config.num_bands).index != other.altitude_band) {
        ++trace.summary().inference_violations;
      }
    }
    state.absence[i].Tick(saw[i], uav.phase == Phase::kChangingAltitude);
    if (uav.phase == Phase::kHovering && state.absence[i].expired()) {
      uav.phase = Phase::kPassing;
      EmitPhaseChange(trace, state.sim_time, i, Phase::kHovering, Phase::kPassing, uav);
    }
  }

  bool decided = false;
  std::unique_ptr<NormalFormGame> game;
  for (int i = 0; i < 2; ++i) {
    if (state.clock_delay[i] > 0) {
      --state.clock_delay[i];
      continue;
    }
    if (++state.epoch_clock[i] < config.TicksPerEpoch()) continue;
    state.epoch_clock[i] = 0;
    const int epoch = ++state.epochs_done[i];
    if (epoch > config.max_epochs || state.uavs[i].phase != Phase::kHovering) continue;
    if (!game) game = std::make_unique<NormalFormGame>(MakeTcasGame(config.num_bands));
    Decide(state, config, *learners[i], i, epoch, *game, trace);
    decided = true;
  }

  auto& summary = trace.summary();
  if (decided) {
    summary.epochs = std::max(summary.epochs, std::min(config.max_epochs,
                                                       std::max(state.epochs_done[0],
                                                                state.epochs_done[1])));
    if (!summary.coordinated &&
        CommittedBand(state.uavs[0]) != CommittedBand(state.uavs[1])) {
      summary.coordinated = true;
      summary.epochs_to_coordination = std::max(state.epochs_done[0], state.epochs_done[1]);
    }
  }

  const UavState& a = state.uavs[0];
  const UavState& b = state.uavs[1];
  const bool active = a.phase != Phase::kDone && b.phase != Phase::kDone;
  const bool passing = a.phase == Phase::kPassing || b.phase == Phase::kPassing;
  if (active && passing && a.altitude_band == b.altitude_band &&
      std::abs(a.longitudinal_pos - b.longitudinal_pos) <= config.collision_radius_m) {
    state.collision = true;
    summary.collision = true;
    TraceEvent event{state.sim_time, a.phase == Phase::kPassing ? 0 : 1, EventKind::kCollision,
                     nlohmann::ordered_json::object()};
    event.payload["band"] = a.altitude_band;
    event.payload["separation_m"] = std::abs(a.longitudinal_pos - b.longitudinal_pos);
    trace.Append(std::move(event));
  }
}

bool EncounterFinished(const EncounterState& state, const EncounterConfig& config) {
  if (state.collision) return true;
  if (state.uavs[0].phase == Phase::kDone && state.uavs[1].phase == Phase::kDone) return true;
  const bool budget_spent = std::min(state.epochs_done[0], state.epochs_done[1]) > config.max_epochs;
  const bool manoeuvring = std::any_of(state.uavs.begin(), state.uavs.end(), [](const UavState& u) {
    return u.phase == Phase::kPassing || u.phase == Phase::kChangingAltitude;
  });
  return budget_spent && !manoeuvring;
}

DecisionTrace RunEncounter(const EncounterConfig& config, std::span<const LearnerSpec> learners) {
  config.Validate();
  if (learners.size() != 2) throw std::invalid_argument("RunEncounter: two learners required");

  LearnerPair agents;
  EncounterState state = MakeInitialState(config);
  for (int i = 0; i < 2; ++i) {
    agents[i] = MakeLearner(learners[i], static_cast<std::size_t>(config.num_bands), config.seed, i);
    agents[i]->set_current_action(ActionId{state.uavs[i].altitude_band});
  }

  DecisionTrace trace;
  trace.summary().seed = config.seed;
  if (state.uavs[0].altitude_band != state.uavs[1].altitude_band) {
    trace.summary().coordinated = true;
    trace.summary().epochs_to_coordination = 0;
  }

  const int traverse_ticks =
      static_cast<int>(std::ceil(config.corridor_length_m / config.pass_speed_mps / config.tick_seconds));
  const std::int64_t hard_limit =
      static_cast<std::int64_t>(config.max_epochs + 2) * config.TicksPerEpoch() +
      std::max(config.OffsetTicks(0), config.OffsetTicks(1)) + traverse_ticks +
      config.AbsenceTicks() + config.AltitudeChangeTicks();
  while (!EncounterFinished(state, config) && state.tick < hard_limit) {
    Step(state, config, agents, trace);
  }

  auto& summary = trace.summary();
  summary.end_time = state.sim_time;
  summary.passed = !state.collision && state.uavs[0].phase == Phase::kDone &&
                   state.uavs[1].phase == Phase::kDone;
  return trace;
}

}  // namespace fpcoord
