#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "efg/game.hpp"
#include "efg/rng.hpp"
#include "efg/solver.hpp"
#include "efg/strategy.hpp"

namespace efg {

// Double-oracle style loop on an explicit two-player game: keep a growing
// restricted model ("empirical game") whose actions are full pure
// strategies of the true game selectable at included infosets, solve it
// with the chosen meta-strategy solver, and add exact best-response
// policies where they leave the current model.
struct PsroConfig {
  Algorithm mss = Algorithm::CFR;  // CFR -> NE target, BelievedRegretCFR -> PBE target
  int growth = 2;                  // max infosets expanded per epoch
  int epochs = 30;
  int iterations = 500;            // solver iterations per epoch (MSS)
  int eval_iterations = 0;         // EVAL solver iterations; 0 = same as MSS
  double temperature = 1.0;        // softmax temperature over expansion gains
  std::uint64_t seed = 0;
  // Payoffs are exact expectations on the explicit true game; sampled
  // estimation is not implemented.
  enum class PayoffMode { Exact } payoff_mode = PayoffMode::Exact;
  int node_cap = 10'000'000;       // empirical-game size guard
};

struct PsroEpoch {
  int epoch = 0;            // 0 is the initial restriction, before any growth
  int empirical_nodes = 0;  // node count of the empirical game
  double eval_regret = 0;   // true-game regret of the empirical NE (EVAL)
};

struct PsroResult {
  std::vector<PsroEpoch> epochs;
};

// Policies available to each player: full pure strategies of the true game
// plus, per true infoset, the policies selectable there. A player follows
// their currently selected policy; at an infoset with more than one
// selectable option (the current policy always remains available) they may
// switch, which fixes play until the next such infoset.
struct PolicyPool {
  // policies[p][k][I]: action policy k of player p+1 takes at true infoset
  // I (entries at the other player's infosets are ignored).
  std::array<std::vector<std::vector<int>>, 2> policies;
  // added[p][I]: policy indices selectable at true infoset I (ascending).
  std::array<std::vector<std::vector<int>>, 2> added;

  PolicyPool() = default;
  // One policy per player that always plays the first action, selectable
  // nowhere (the degenerate root-level model).
  explicit PolicyPool(const Game& true_game);

  // Selectable policy indices at `infoset` while `current` is in effect:
  // the added set with `current` merged in, ascending.
  std::vector<int> options_at(int player, InfosetId infoset, int current) const;
};

// Explicit EFG of the restricted model: chance structure and terminals of
// the true game, with decision nodes only where a player has a real policy
// choice; forced segments are collapsed.
struct EmpiricalGame {
  Game game;
  // Per empirical infoset: the true infoset it selects at, the owner's
  // policy-selection history, and the selectable policy indices (ascending;
  // row k corresponds to switching to policy options[s][k]).
  std::vector<InfosetId> true_infoset;
  std::vector<std::string> selection_history;
  std::vector<std::vector<int>> options;
  // True infosets that occur in the walk (as a choice or forced through).
  std::vector<char> encountered;
  // (true infoset, selection history) -> empirical infoset.
  std::map<std::pair<InfosetId, std::string>, InfosetId> index;
};

EmpiricalGame build_empirical_game(const Game& true_game, const PolicyPool& pool,
                                   int node_cap);

// Behavioral true-game profile induced by an empirical-game strategy: at
// each true infoset, the selection-weighted action distribution of the
// composite policies conditioned on the owner playing to reach it; uniform
// where no composite does (such infosets are unreachable under the model
// regardless of the opponent, so the choice does not affect values).
StrategyProfile complete_to_true_game(const Game& true_game,
                                      const EmpiricalGame& empirical,
                                      const PolicyPool& pool,
                                      const StrategyProfile& strategy);

// Samples min(m, gains.size()) distinct indices without replacement from
// softmax(gains / temperature); temperature <= 0 picks the top gains
// deterministically (ties toward the lower index).
std::vector<int> softmax_infoset_sampler(const std::vector<double>& gains, int m,
                                         double temperature, Rng& rng);

PsroResult run_psro(const Game& true_game, const PsroConfig& config);

}  // namespace efg
