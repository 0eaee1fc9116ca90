#pragma once

#include <Eigen/Dense>

#include "efg/game.hpp"
#include "efg/strategy.hpp"

namespace efg {

// Factored reach probability of a node: chance contribution, one entry per
// strategic player, and their product.
struct Reach {
  double chance = 1.0;
  Eigen::VectorXd players;
  double product = 1.0;
};

Reach reach_probability(const Game& game, const StrategyProfile& profile, NodeId node);

double infoset_reach(const Game& game, const StrategyProfile& profile, InfosetId infoset);

// Reach product r(h, sigma) for every node in one forward sweep.
Eigen::VectorXd all_reach(const Game& game, const StrategyProfile& profile);

// Conditional expected utility U^E(sigma | h) for every node in one
// bottom-up sweep; column h holds the utility vector at node h.
Eigen::MatrixXd all_node_values(const Game& game, const StrategyProfile& profile);

// U^E(sigma | from_node): expected utilities using edge probabilities below
// from_node only; the terminal case returns the node's own utility vector.
Eigen::VectorXd expected_utility(const Game& game, const StrategyProfile& profile,
                                 NodeId from_node);

double believed_utility(const Game& game, const Assessment& assessment, InfosetId infoset);
double believed_action_utility(const Game& game, const Assessment& assessment,
                               InfosetId infoset, int action);

struct BestResponse {
  // Chosen action index per infoset of the responding player; -1 at other
  // players' infosets.
  std::vector<int> action;
  double value = 0.0;  // root expected utility of (BR, sigma_{-j})
};

// Exact pure best response for `player` against profile's other strategies,
// via a depth-ordered pass weighting action values by chance-and-opponent
// reach. Ties break toward the lowest action index.
BestResponse best_response(const Game& game, const StrategyProfile& profile, int player);

// Replaces `player`'s rows with the one-hot rows of `br`.
StrategyProfile apply_best_response(const Game& game, const StrategyProfile& profile,
                                    int player, const BestResponse& br);

struct RegretReport {
  Eigen::VectorXd per_player;
  double total = 0.0;
};

// Reg_j = max_{sigma'} U^E_j(sigma', sigma_{-j}) - U^E_j(sigma), summed.
RegretReport profile_regret(const Game& game, const StrategyProfile& profile);

}  // namespace efg
