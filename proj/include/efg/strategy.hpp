#pragma once

#include <Eigen/Dense>
#include <vector>

#include "efg/game.hpp"
#include "efg/rng.hpp"

namespace efg {

// Behavioral strategy profile: one distribution over actions per infoset,
// indexed by InfosetId and aligned with InfoSet::actions.
struct StrategyProfile {
  std::vector<Eigen::VectorXd> rows;

  Eigen::VectorXd& operator[](InfosetId id) { return rows[id]; }
  const Eigen::VectorXd& operator[](InfosetId id) const { return rows[id]; }
  int size() const { return static_cast<int>(rows.size()); }
};

// Belief system: one distribution over member nodes per infoset, aligned
// with InfoSet::members.
struct BeliefSystem {
  std::vector<Eigen::VectorXd> rows;

  Eigen::VectorXd& operator[](InfosetId id) { return rows[id]; }
  const Eigen::VectorXd& operator[](InfosetId id) const { return rows[id]; }
  int size() const { return static_cast<int>(rows.size()); }
};

struct Assessment {
  StrategyProfile strategy;
  BeliefSystem beliefs;
};

inline constexpr double kDistributionTol = 1e-9;

StrategyProfile uniform_profile(const Game& game);
BeliefSystem uniform_beliefs(const Game& game);

// Seeded fully mixed profile with every entry positive.
StrategyProfile random_profile(const Game& game, Rng& rng);

// Seeded pure profile (a deterministic action per infoset).
StrategyProfile random_pure_profile(const Game& game, Rng& rng);

// Throws GameError if a row is missing, misshapen, negative, or does not
// sum to 1 within kDistributionTol.
void check_profile(const Game& game, const StrategyProfile& profile);
void check_beliefs(const Game& game, const BeliefSystem& beliefs);

}  // namespace efg
