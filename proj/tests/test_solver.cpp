#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "efg/generators.hpp"
#include "efg/solver.hpp"
#include "efg/values.hpp"
#include "efg/verify.hpp"
#include "support/oracles.hpp"
#include "support/random_games.hpp"

using namespace efg;
namespace ts = efg::testsupport;

TEST_CASE("regret matching") {
  Eigen::Vector3d r(3, 1, 0);
  Eigen::VectorXd d = regret_matching(r);
  CHECK(d[0] == doctest::Approx(0.75));
  CHECK(d[1] == doctest::Approx(0.25));
  CHECK(d[2] == doctest::Approx(0.0));

  Eigen::Vector2d neg(-2, -1);
  d = regret_matching(neg);
  CHECK(d[0] == doctest::Approx(0.5));
  CHECK(d[1] == doctest::Approx(0.5));

  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd row(3);
    for (int i = 0; i < 3; ++i) row[i] = (uniform_unit(rng) - 0.5) * 10;
    Eigen::VectorXd out = regret_matching(row);
    CHECK(out.sum() == doctest::Approx(1.0));
    CHECK(out.minCoeff() >= 0.0);
    // Monotone in each positive entry.
    for (int i = 0; i < 3; ++i) {
      if (row[i] <= 0) continue;
      Eigen::VectorXd bumped = row;
      bumped[i] += 1.0;
      CHECK(regret_matching(bumped)[i] >= out[i] - 1e-12);
    }
  }
}

TEST_CASE("update_beliefs: Bayes on-path, most-plausible off-path") {
  Game g = fixture_figure1();
  StrategyProfile p = fixture_figure1_assessment().strategy;
  BeliefSystem mu = update_beliefs(g, p);
  CHECK(mu[0][0] == doctest::Approx(1.0));
  // Infoset {b, c} is off-path and b, c are incomparable: uniform.
  CHECK(mu[1][0] == doctest::Approx(0.5));
  CHECK(mu[1][1] == doctest::Approx(0.5));

  p[0] = Eigen::Vector4d(0.2, 0.5, 0.3, 0.0);
  mu = update_beliefs(g, p);
  CHECK(mu[1][0] == doctest::Approx(0.5 / 0.8));
  CHECK(mu[1][1] == doctest::Approx(0.3 / 0.8));
}

TEST_CASE("update_beliefs picks the more plausible off-path member") {
  // Player 1 either ends the game (L) or passes to a second decision x
  // whose two actions both reach player 2's infoset. With L played, the
  // infoset is off-path, but x's own strategy still ranks its children:
  // the positive-probability child is strictly more plausible.
  GameBuilder b(2);
  NodeId root = b.add_decision(kNoNode, "", 1);
  b.assign_infoset(root, b.add_infoset(1, {"L", "M"}));
  b.add_terminal(root, "L", Eigen::Vector2d(1, 0));
  NodeId x = b.add_decision(root, "M", 1);
  InfosetId ix = b.add_infoset(1, {"p", "q"});
  b.assign_infoset(x, ix);
  NodeId m2 = b.add_decision(x, "p", 2);
  NodeId r2 = b.add_decision(x, "q", 2);
  InfosetId i2 = b.add_infoset(2, {"x", "y"});
  b.assign_infoset(m2, i2);
  b.assign_infoset(r2, i2);
  for (NodeId nd : {m2, r2}) {
    b.add_terminal(nd, "x", Eigen::Vector2d(0, 1));
    b.add_terminal(nd, "y", Eigen::Vector2d(0, 2));
  }
  Game g = std::move(b).build();

  StrategyProfile p = uniform_profile(g);
  p[0] = Eigen::Vector2d(1, 0);   // L: infoset i2 unreached
  p[ix] = Eigen::Vector2d(1, 0);  // at x, p is played and q is not
  BeliefSystem mu = update_beliefs(g, p);
  CHECK(mu[i2][0] == doctest::Approx(1.0));
  CHECK(mu[i2][1] == doctest::Approx(0.0));

  // With both of x's actions played, the members are equally plausible
  // and the off-path belief is uniform over both.
  p[0] = Eigen::Vector2d(1, 0);
  p[ix] = Eigen::Vector2d(0.5, 0.5);
  mu = update_beliefs(g, p);
  CHECK(mu[i2][0] == doctest::Approx(0.5));
}

TEST_CASE("matching pennies: both solvers approach uniform") {
  Game g = fixture_matching_pennies();
  SolveConfig cfg;
  cfg.iterations = 10000;

  cfg.algorithm = Algorithm::CFR;
  CfrResult ne = cfr(g, cfg);
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a) CHECK(std::abs(ne.average[s][a] - 0.5) <= 0.02);
  Eigen::VectorXd value = expected_utility(g, ne.average, g.root());
  CHECK(std::abs(value[0]) <= 0.02);

  cfg.algorithm = Algorithm::BelievedRegretCFR;
  PbeSolveResult pbe = pbe_cfr(g, cfg);
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      CHECK(std::abs(pbe.assessment.strategy[s][a] - 0.5) <= 0.02);
  CHECK(worst_case_local_regret(g, pbe.assessment) <= 0.02);
}

TEST_CASE("T=1 returns the uniform initialization") {
  Game g = fixture_matching_pennies();
  SolveConfig cfg;
  cfg.iterations = 1;
  CfrResult ne = cfr(g, cfg);
  CHECK(ne.average[0][0] == doctest::Approx(0.5));
  PbeSolveResult pbe = pbe_cfr(g, cfg);
  CHECK(pbe.assessment.strategy[0][0] == doctest::Approx(0.5));
  CHECK(pbe.assessment.strategy[1][1] == doctest::Approx(0.5));
}

TEST_CASE("solver outputs satisfy Bayes and AGM exactly") {
  Rng rng(211);
  for (int trial = 0; trial < 25; ++trial) {
    Game g = ts::random_game(rng);
    SolveConfig cfg;
    cfg.iterations = 60;
    PbeSolveResult res = pbe_cfr(g, cfg);
    CHECK(satisfies_bayes(g, res.assessment, 1e-9).pass);
    CHECK(is_agm_consistent(g, res.assessment).pass);
    // Returned beliefs equal the public update_beliefs of the average.
    BeliefSystem mu = update_beliefs(g, res.assessment.strategy);
    for (int s = 0; s < g.num_infosets(); ++s)
      CHECK(res.assessment.beliefs[s].isApprox(mu[s], 1e-15));
  }
}

TEST_CASE("believed-regret bound holds at every checkpoint") {
  Rng rng(223);
  for (int trial = 0; trial < 10; ++trial) {
    Game g = ts::random_game(rng);
    SolveConfig cfg;
    cfg.iterations = 400;
    cfg.checkpoint_every = 50;
    PbeSolveResult res = pbe_cfr(g, cfg);
    REQUIRE(res.log.checkpoints.size() == 8);
    int prev_t = 0;
    for (const Checkpoint& cp : res.log.checkpoints) {
      CHECK(cp.t > prev_t);
      prev_t = cp.t;
      CHECK(cp.lemma2_excess <= 0.0);
      CHECK(cp.metric >= 0.0);
    }
  }
}

TEST_CASE("cfr regret decays on random zero-sum games") {
  Rng rng(227);
  for (int trial = 0; trial < 4; ++trial) {
    ts::RandomGameParams params;
    params.max_nodes = 120;
    Game g = ts::zero_sum_twin(ts::random_game(rng, params));

    SolveConfig cfg;
    cfg.iterations = 2000;
    CfrResult res = cfr(g, cfg);
    const double regret = profile_regret(g, res.average).total;
    const double delta = std::max(g.utility_range(1), g.utility_range(2));
    const double bound =
        delta * g.max_actions() * g.num_infosets() / std::sqrt(cfg.iterations);
    CHECK(regret <= bound);
    CHECK(regret >= -1e-9);
  }
}

TEST_CASE("pbe-cfr metric decreases with more iterations") {
  Rng rng(229);
  Game g = ts::random_game(rng);
  SolveConfig cfg;
  cfg.iterations = 50;
  const double early = worst_case_local_regret(g, pbe_cfr(g, cfg).assessment);
  cfg.iterations = 2000;
  const double late = worst_case_local_regret(g, pbe_cfr(g, cfg).assessment);
  CHECK(late <= early + 1e-9);
}

TEST_CASE("solvers reject games that are not two-player") {
  Game g = fixture_figure3();
  SolveConfig cfg;
  CHECK_THROWS_AS(cfr(g, cfg), GameError);
  CHECK_THROWS_AS(pbe_cfr(g, cfg), GameError);
}

TEST_CASE("solver runs are deterministic") {
  Rng rng(233);
  Game g = ts::random_game(rng);
  SolveConfig cfg;
  cfg.iterations = 200;
  PbeSolveResult a = pbe_cfr(g, cfg);
  PbeSolveResult b = pbe_cfr(g, cfg);
  for (int s = 0; s < g.num_infosets(); ++s) {
    CHECK(a.assessment.strategy[s] == b.assessment.strategy[s]);
    CHECK(a.assessment.beliefs[s] == b.assessment.beliefs[s]);
  }
}
