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

#include "fpcoord/game_json.h"

#include <stdexcept>
#include <string>
#include <vector>

namespace fpcoord {

nlohmann::ordered_json GameToJson(const NormalFormGame& game) {
  if (game.num_players() != 2) {
    throw std::invalid_argument("GameToJson: only two-player games serialize densely");
  }
  nlohmann::ordered_json doc;
  doc["name"] = game.name();
  doc["players"] = 2;
  doc["actions"] = nlohmann::ordered_json::array({game.action_labels(0), game.action_labels(1)});
  auto tensor = nlohmann::ordered_json::array();
  for (std::size_t a = 0; a < game.num_actions(0); ++a) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t b = 0; b < game.num_actions(1); ++b) {
      const JointAction joint{ActionId{a}, ActionId{b}};
      row.push_back(game.payoffs(joint));
    }
    tensor.push_back(std::move(row));
  }
  doc["payoff"] = std::move(tensor);
  doc["common_interest"] = game.traits().common_interest;
  doc["symmetric"] = game.traits().symmetric;
  return doc;
}

NormalFormGame GameFromJson(const nlohmann::json& doc) {
  if (doc.is_string()) return MakeGameByName(doc.get<std::string>());
  if (!doc.is_object()) throw std::invalid_argument("game: expected an object or a name");

  const int players = doc.value("players", 2);
  if (players != 2) throw std::invalid_argument("game.players: only 2 is supported");
  const auto labels = doc.at("actions").get<std::vector<std::vector<std::string>>>();
  if (labels.size() != 2) throw std::invalid_argument("game.actions: need two label lists");

  const auto& tensor = doc.at("payoff");
  if (!tensor.is_array() || tensor.size() != labels[0].size()) {
    throw std::invalid_argument("game.payoff: outer dimension must match player 0 actions");
  }
  std::vector<std::vector<double>> payoffs;
  for (const auto& row : tensor) {
    if (!row.is_array() || row.size() != labels[1].size()) {
      throw std::invalid_argument("game.payoff: inner dimension must match player 1 actions");
    }
    for (const auto& cell : row) payoffs.push_back(cell.get<std::vector<double>>());
  }
  GameTraits traits{.common_interest = doc.value("common_interest", false),
                    .symmetric = doc.value("symmetric", false)};
  return NormalFormGame::Dense(doc.value("name", std::string("custom")), labels,
                               std::move(payoffs), traits);
}

}  // namespace fpcoord
