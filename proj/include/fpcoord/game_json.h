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

#ifndef FPCOORD_GAME_JSON_H_
#define FPCOORD_GAME_JSON_H_

#include "fpcoord/game.h"
#include "json.hpp"

namespace fpcoord {

// {"name", "players", "actions": [[labels]...], "payoff": [[[r0, r1]...]...],
//  "common_interest", "symmetric"}. The payoff tensor is indexed by player-0
// action, then player-1 action, then player. Only two-player games.
nlohmann::ordered_json GameToJson(const NormalFormGame& game);

// Accepts the document above, or a bare string naming a canonical game.
NormalFormGame GameFromJson(const nlohmann::json& doc);

}  // namespace fpcoord

#endif  // FPCOORD_GAME_JSON_H_
