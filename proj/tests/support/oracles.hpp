#pragma once

#include <Eigen/Dense>
#include <vector>

#include "efg/game.hpp"
#include "efg/strategy.hpp"

namespace efg::testsupport {

// Expected utility below from_node by enumerating every terminal descendant
// and walking its path; independent of the library's sweep.
Eigen::VectorXd oracle_expected_utility(const Game& game, const StrategyProfile& profile,
                                        NodeId from_node);

// Reach product of a node by explicit root-to-node path walk.
double oracle_reach(const Game& game, const StrategyProfile& profile, NodeId node);

// Exact best-response value for `player` by enumerating all of the player's
// pure strategies (throws if the count exceeds `limit`).
double oracle_best_response_value(const Game& game, const StrategyProfile& profile,
                                  int player, long long limit = 1 << 20);

// Enumerate the player's pure strategies as action-index assignments over
// the player's infosets (ordered by InfosetId).
std::vector<std::vector<int>> enumerate_pure_strategies(const Game& game, int player,
                                                        long long limit = 1 << 20);

// Exhaustive search over total preorders (level assignments) of the game
// nodes for one that rationalizes the assessment: equalities along
// positive-probability edges, strict drops along zero-probability ones,
// and belief supports equal to the most plausible infoset members.
// Intended for micro games only (exponential).
bool oracle_agm_consistent(const Game& game, const Assessment& assessment);

// Believed-utility gain at `infoset` from the best pure rewrite of the
// owner's strategy at the infoset and all own infosets below it, by
// exhaustive enumeration of those continuation assignments.
double oracle_full_believed_regret(const Game& game, const Assessment& assessment,
                                   InfosetId infoset);

}  // namespace efg::testsupport
