#pragma once

#include <cstdint>
#include <vector>

#include "efg/game.hpp"
#include "efg/strategy.hpp"

namespace efg {

enum class Algorithm { CFR, BelievedRegretCFR };

struct SolveConfig {
  int iterations = 1000;
  std::uint64_t seed = 0;         // recorded for provenance; both solvers
                                  // are deterministic given the game
  int checkpoint_every = 0;       // 0: no intermediate checkpoints
  Algorithm algorithm = Algorithm::BelievedRegretCFR;
};

struct Checkpoint {
  int t = 0;
  double wall_ms = 0.0;
  // worst-case local regret of the running average (belief-based solver)
  // or total best-response regret of the running average (CFR).
  double metric = 0.0;
  // max over infosets of range_u(owner) * |A(I)| / sqrt(t).
  double lemma2_bound = 0.0;
  // max over infosets of (1/t) * max_a cumulative regret minus the per-
  // infoset bound; must stay <= 0.
  double lemma2_excess = 0.0;
};

struct IterationLog {
  std::vector<Checkpoint> checkpoints;
};

// Positive-part normalization of a cumulative-regret row; uniform when no
// entry is positive.
Eigen::VectorXd regret_matching(const Eigen::VectorXd& cum_regrets);

// Beliefs induced by a profile: conditional reach where the infoset is
// reachable, otherwise uniform over its most plausible members under the
// profile's plausibility order.
BeliefSystem update_beliefs(const Game& game, const StrategyProfile& profile);

struct CfrResult {
  StrategyProfile average;
  IterationLog log;
};

// Vanilla CFR with simultaneous updates and reach-weighted averaging.
CfrResult cfr(const Game& game, const SolveConfig& config);

struct PbeSolveResult {
  Assessment assessment;
  IterationLog log;
};

// Regret minimization over believed utilities: per iteration a bottom-up
// expected-utility sweep, belief-weighted per-infoset regret accumulation
// (no opponent-reach weighting), regret matching, and a belief update for
// the next iterate. Returns the unweighted average strategy with beliefs
// recomputed from it; the result is Bayes-compatible and carries a
// rationalizing plausibility order by construction.
PbeSolveResult pbe_cfr(const Game& game, const SolveConfig& config);

}  // namespace efg
