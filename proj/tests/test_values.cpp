#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "efg/values.hpp"
#include "support/oracles.hpp"
#include "support/random_games.hpp"

using namespace efg;
namespace ts = efg::testsupport;

namespace {

Game matching_pennies() {
  GameBuilder b(2);
  NodeId root = b.add_decision(kNoNode, "", 1);
  b.assign_infoset(root, b.add_infoset(1, {"H", "T"}));
  NodeId h = b.add_decision(root, "H", 2);
  NodeId t = b.add_decision(root, "T", 2);
  InfosetId i2 = b.add_infoset(2, {"h", "t"});
  b.assign_infoset(h, i2);
  b.assign_infoset(t, i2);
  b.add_terminal(h, "h", Eigen::Vector2d(1, -1));
  b.add_terminal(h, "t", Eigen::Vector2d(-1, 1));
  b.add_terminal(t, "h", Eigen::Vector2d(-1, 1));
  b.add_terminal(t, "t", Eigen::Vector2d(1, -1));
  return std::move(b).build();
}

StrategyProfile pure(const Game& g, const std::vector<int>& actions) {
  StrategyProfile p = uniform_profile(g);
  for (const InfoSet& I : g.infosets()) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(I.num_actions());
    row[actions[I.id]] = 1.0;
    p[I.id] = std::move(row);
  }
  return p;
}

}  // namespace

TEST_CASE("matching pennies values") {
  Game g = matching_pennies();
  StrategyProfile mixed = uniform_profile(g);
  Eigen::VectorXd v = expected_utility(g, mixed, g.root());
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(0.0));

  StrategyProfile hh = pure(g, {0, 0});
  v = expected_utility(g, hh, g.root());
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(-1.0));

  RegretReport rep = profile_regret(g, hh);
  CHECK(rep.per_player[0] == doctest::Approx(0.0));
  CHECK(rep.per_player[1] == doctest::Approx(2.0));
  CHECK(rep.total == doctest::Approx(2.0));

  // Uniform is the equilibrium: zero regret for both.
  rep = profile_regret(g, mixed);
  CHECK(rep.total == doctest::Approx(0.0));
}

TEST_CASE("reach probabilities factor correctly") {
  Game g = matching_pennies();
  StrategyProfile p = uniform_profile(g);
  p[0] = Eigen::Vector2d(0.7, 0.3);
  p[1] = Eigen::Vector2d(0.2, 0.8);
  Reach r = reach_probability(g, p, 3);  // terminal after H,h
  CHECK(r.chance == doctest::Approx(1.0));
  CHECK(r.players[0] == doctest::Approx(0.7));
  CHECK(r.players[1] == doctest::Approx(0.2));
  CHECK(r.product == doctest::Approx(0.14));
  CHECK(infoset_reach(g, p, 1) == doctest::Approx(1.0));  // both members reachable
}

TEST_CASE("believed utility matches the action decomposition") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Game g = ts::random_game(rng);
    Assessment a;
    a.strategy = random_profile(g, rng);
    a.beliefs = uniform_beliefs(g);
    for (const InfoSet& I : g.infosets()) {
      double total = 0.0;
      for (int ac = 0; ac < I.num_actions(); ++ac)
        total += a.strategy[I.id][ac] * believed_action_utility(g, a, I.id, ac);
      CHECK(believed_utility(g, a, I.id) == doctest::Approx(total).epsilon(1e-9));
    }
  }
}

TEST_CASE("sweeps agree with enumeration oracles") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    Game g = ts::random_game(rng);
    StrategyProfile p = (trial % 2 == 0) ? random_profile(g, rng) : random_pure_profile(g, rng);
    Eigen::MatrixXd v = all_node_values(g, p);
    Eigen::VectorXd r = all_reach(g, p);
    for (const Node& nd : g.nodes()) {
      if (nd.id % 7 == 0 || nd.is_terminal()) {
        Eigen::VectorXd want = ts::oracle_expected_utility(g, p, nd.id);
        for (int j = 0; j < g.player_count(); ++j)
          CHECK(v(j, nd.id) == doctest::Approx(want[j]).epsilon(1e-9));
      }
      CHECK(r[nd.id] == doctest::Approx(ts::oracle_reach(g, p, nd.id)).epsilon(1e-9));
      Reach fac = reach_probability(g, p, nd.id);
      CHECK(fac.product == doctest::Approx(r[nd.id]).epsilon(1e-9));
    }
  }
}

TEST_CASE("best response matches pure-strategy enumeration") {
  Rng rng(23);
  int checked = 0;
  while (checked < 15) {
    Game g = ts::micro_random_game(rng);
    StrategyProfile p = random_profile(g, rng);
    for (int j = 1; j <= g.player_count(); ++j) {
      BestResponse br = best_response(g, p, j);
      double want = ts::oracle_best_response_value(g, p, j);
      CHECK(br.value == doctest::Approx(want).epsilon(1e-9));
      // The reported value is reproduced by playing the pure response.
      StrategyProfile combined = apply_best_response(g, p, j, br);
      Eigen::VectorXd u = expected_utility(g, combined, g.root());
      CHECK(u[j - 1] == doctest::Approx(br.value).epsilon(1e-9));
    }
    ++checked;
  }
}

TEST_CASE("regret is non-negative on random profiles") {
  Rng rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    Game g = ts::micro_random_game(rng);
    StrategyProfile p = random_profile(g, rng);
    RegretReport rep = profile_regret(g, p);
    for (int j = 0; j < g.player_count(); ++j) CHECK(rep.per_player[j] >= -1e-9);
  }
}

TEST_CASE("best response ties break to the lowest action index") {
  // Both actions of player 2 give identical payoffs.
  GameBuilder b(2);
  NodeId root = b.add_decision(kNoNode, "", 2);
  b.assign_infoset(root, b.add_infoset(2, {"l", "r"}));
  b.add_terminal(root, "l", Eigen::Vector2d(0, 5));
  b.add_terminal(root, "r", Eigen::Vector2d(0, 5));
  Game g = std::move(b).build();
  BestResponse br = best_response(g, uniform_profile(g), 2);
  CHECK(br.action[0] == 0);
  CHECK(br.value == doctest::Approx(5.0));
}
