#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "efg/game.hpp"
#include "efg/strategy.hpp"

namespace efg {

using Json = nlohmann::ordered_json;

// Game interchange format (UTF-8 JSON):
//   {
//     "players": <count of strategic players>,
//     "root": <node id>,
//     "nodes": [{"id", "owner", "infoset", "children": {label: id}, "utility"}, ...],
//     "infosets": [{"id", "owner", "members", "actions"}, ...],
//     "chance": {<node id>: {label: prob}, ...}
//   }
// Terminal nodes carry "utility" only; chance nodes have owner 0 and an
// entry under "chance"; decision nodes carry "owner" and "infoset".
Json game_to_json(const Game& game);
Game game_from_json(const Json& doc);

// Assessment format: {"strategy": {infoset-id: {action: prob}},
//                     "beliefs":  {infoset-id: {node-id: prob}}}.
// Omitted actions/nodes are zero-probability; distributions are validated.
Json assessment_to_json(const Game& game, const Assessment& assessment);
Assessment assessment_from_json(const Game& game, const Json& doc);

Game load_game(const std::string& path);
void save_game(const Game& game, const std::string& path);
Assessment load_assessment(const Game& game, const std::string& path);
void save_assessment(const Game& game, const Assessment& assessment,
                     const std::string& path);

}  // namespace efg
