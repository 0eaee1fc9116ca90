#include "efg/strategy.hpp"

#include <cmath>

namespace efg {

StrategyProfile uniform_profile(const Game& game) {
  StrategyProfile p;
  p.rows.reserve(game.num_infosets());
  for (const InfoSet& I : game.infosets())
    p.rows.push_back(Eigen::VectorXd::Constant(I.num_actions(), 1.0 / I.num_actions()));
  return p;
}

BeliefSystem uniform_beliefs(const Game& game) {
  BeliefSystem b;
  b.rows.reserve(game.num_infosets());
  for (const InfoSet& I : game.infosets()) {
    const int m = static_cast<int>(I.members.size());
    b.rows.push_back(Eigen::VectorXd::Constant(m, 1.0 / m));
  }
  return b;
}

StrategyProfile random_profile(const Game& game, Rng& rng) {
  StrategyProfile p;
  p.rows.reserve(game.num_infosets());
  for (const InfoSet& I : game.infosets()) {
    Eigen::VectorXd row(I.num_actions());
    for (int a = 0; a < I.num_actions(); ++a) row[a] = 0.05 + uniform_unit(rng);
    row /= row.sum();
    p.rows.push_back(std::move(row));
  }
  return p;
}

StrategyProfile random_pure_profile(const Game& game, Rng& rng) {
  StrategyProfile p;
  p.rows.reserve(game.num_infosets());
  for (const InfoSet& I : game.infosets()) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(I.num_actions());
    row[static_cast<int>(uniform_index(rng, I.num_actions()))] = 1.0;
    p.rows.push_back(std::move(row));
  }
  return p;
}

namespace {

void check_rows(const Game& game, const std::vector<Eigen::VectorXd>& rows,
                bool over_members, const char* what) {
  if (static_cast<int>(rows.size()) != game.num_infosets())
    throw GameError(std::string(what) + ": row count does not match game infosets");
  for (const InfoSet& I : game.infosets()) {
    const Eigen::VectorXd& row = rows[I.id];
    const int want = over_members ? static_cast<int>(I.members.size()) : I.num_actions();
    if (row.size() != want)
      throw GameError(std::string(what) + ": row " + std::to_string(I.id) + " has wrong size");
    if ((row.array() < 0.0).any())
      throw GameError(std::string(what) + ": row " + std::to_string(I.id) + " has negative mass");
    if (std::abs(row.sum() - 1.0) > kDistributionTol)
      throw GameError(std::string(what) + ": row " + std::to_string(I.id) +
                      " does not sum to 1");
  }
}

}  // namespace

void check_profile(const Game& game, const StrategyProfile& profile) {
  check_rows(game, profile.rows, false, "strategy");
}

void check_beliefs(const Game& game, const BeliefSystem& beliefs) {
  check_rows(game, beliefs.rows, true, "beliefs");
}

}  // namespace efg
