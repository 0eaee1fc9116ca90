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

TEST_CASE("figure-1 assessment is a PBE") {
  Game g = fixture_figure1();
  Assessment a = fixture_figure1_assessment();
  PbeReport rep = is_pbe(g, a);
  CHECK(rep.rationality.pass);
  CHECK(rep.bayes.pass);
  CHECK(rep.agm.pass);
  CHECK(rep.pass);
  CHECK(worst_case_local_regret(g, a) == doctest::Approx(0.0));
}

TEST_CASE("figure-3 assessment fails AGM with a certificate") {
  Game g = fixture_figure3();
  Assessment a = fixture_figure3_assessment();
  AgmReport rep = is_agm_consistent(g, a);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.contradiction.has_value());
  CHECK(rep.certificate.contains("bad_pair"));
}

TEST_CASE("three-player illustration assessment is AGM-consistent and Bayes") {
  Game g = fixture_assessments_example();
  Assessment a = fixture_assessments_example_assessment();
  CHECK(is_agm_consistent(g, a).pass);
  CHECK(satisfies_bayes(g, a).pass);
}

TEST_CASE("sequential rationality flags profitable deviations") {
  Game g = fixture_figure1();
  Assessment a = fixture_figure1_assessment();
  // Player 1 plays d instead of a: gains 3 - 1 = 2 by deviating to a.
  a.strategy[0] = Eigen::Vector4d(0, 0, 0, 1);
  RationalityReport rep = is_sequentially_rational(g, a);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_violation == doctest::Approx(2.0));
  CHECK(rep.witness_infoset == 0);
  CHECK(rep.witness_action == 0);
  CHECK(worst_case_local_regret(g, a) == doctest::Approx(2.0));
}

TEST_CASE("bayes check compares beliefs to conditional reach") {
  Game g = fixture_matching_pennies();
  Assessment a;
  a.strategy = uniform_profile(g);
  a.strategy[0] = Eigen::Vector2d(0.8, 0.2);
  a.beliefs = uniform_beliefs(g);
  BayesReport rep = satisfies_bayes(g, a);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_deviation == doctest::Approx(0.3));
  a.beliefs[1] = Eigen::Vector2d(0.8, 0.2);
  CHECK(satisfies_bayes(g, a).pass);
}

TEST_CASE("unreached infosets are exempt from Bayes") {
  Game g = fixture_figure1();
  Assessment a = fixture_figure1_assessment();
  a.beliefs[1] = Eigen::Vector2d(0.25, 0.75);  // arbitrary off-path belief
  CHECK(satisfies_bayes(g, a).pass);
}

TEST_CASE("agm verdict matches the exhaustive preorder oracle") {
  Rng rng(101);
  int trials = 0;
  while (trials < 60) {
    Game g = ts::micro_random_game(rng, 2);
    Assessment a;
    switch (trials % 3) {
      case 0:
        a.strategy = ts::random_game_profile_mixed_support(g, rng);
        a.beliefs = update_beliefs(g, a.strategy);
        break;
      case 1:
        a.strategy = random_pure_profile(g, rng);
        a.beliefs = uniform_beliefs(g);
        break;
      default:
        a.strategy = ts::random_game_profile_mixed_support(g, rng);
        a.beliefs = uniform_beliefs(g);
        for (const InfoSet& I : g.infosets()) {
          // Random belief support to provoke contradictions.
          Eigen::VectorXd row = Eigen::VectorXd::Zero(I.members.size());
          row[static_cast<int>(uniform_index(rng, I.members.size()))] = 1.0;
          a.beliefs[I.id] = row;
        }
        break;
    }
    CHECK(is_agm_consistent(g, a).pass == ts::oracle_agm_consistent(g, a));
    ++trials;
  }
}

TEST_CASE("full believed regret matches continuation enumeration") {
  Rng rng(107);
  for (int trial = 0; trial < 40; ++trial) {
    Game g = ts::micro_random_game(rng, 2);
    Assessment a;
    a.strategy = random_profile(g, rng);
    a.beliefs = update_beliefs(g, a.strategy);
    for (const InfoSet& I : g.infosets()) {
      const double got = full_believed_regret(g, a, I.id);
      const double want = ts::oracle_full_believed_regret(g, a, I.id);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
      CHECK(got >= -1e-12);
    }
  }
}

TEST_CASE("local regret is bounded by the regional maximum") {
  Rng rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    Game g = ts::micro_random_game(rng, 2);
    Assessment a;
    a.strategy = random_profile(g, rng);
    a.beliefs = update_beliefs(g, a.strategy);
    double max_full = 0.0;
    for (const InfoSet& I : g.infosets())
      max_full = std::max(max_full, full_believed_regret(g, a, I.id));
    CHECK(worst_case_local_regret(g, a) <= max_full + 1e-9);
  }
}

TEST_CASE("believed regret of leaf-most infosets equals the local gain") {
  Rng rng(127);
  for (int trial = 0; trial < 20; ++trial) {
    Game g = ts::micro_random_game(rng, 2);
    Assessment a;
    a.strategy = random_profile(g, rng);
    a.beliefs = update_beliefs(g, a.strategy);
    for (const InfoSet& I : g.infosets()) {
      // Does the owner decide again below this infoset?
      bool has_descendant = false;
      for (const InfoSet& J : g.infosets()) {
        if (J.id == I.id || J.owner != I.owner) continue;
        for (NodeId m : I.members)
          if (g.is_ancestor_or_self(m, J.members.front())) has_descendant = true;
      }
      if (has_descendant) continue;
      double local = 0.0;
      const double ub = believed_utility(g, a, I.id);
      for (int ac = 0; ac < I.num_actions(); ++ac)
        local = std::max(local, believed_action_utility(g, a, I.id, ac) - ub);
      CHECK(full_believed_regret(g, a, I.id) == doctest::Approx(local).epsilon(1e-9));
    }
  }
}

TEST_CASE("verifier is invariant under node relabeling") {
  // Same game as figure-1 but with sibling order permuted: d first, then
  // c, b, a; infoset ids and member order likewise permuted.
  GameBuilder b(2);
  NodeId root = b.add_decision(kNoNode, "", 1);
  InfosetId i2 = b.add_infoset(2, {"e", "f"});
  InfosetId i1 = b.add_infoset(1, {"d", "c", "b", "a"});
  b.assign_infoset(root, i1);
  b.add_terminal(root, "d", Eigen::Vector2d(1, 0));
  NodeId nc = b.add_decision(root, "c", 2);
  NodeId nb = b.add_decision(root, "b", 2);
  b.add_terminal(root, "a", Eigen::Vector2d(3, 0));
  b.assign_infoset(nc, i2);
  b.assign_infoset(nb, i2);
  b.add_terminal(nc, "e", Eigen::Vector2d(2, 3));
  b.add_terminal(nc, "f", Eigen::Vector2d(0, 1));
  b.add_terminal(nb, "e", Eigen::Vector2d(1, 2));
  b.add_terminal(nb, "f", Eigen::Vector2d(2, 0));
  Game g = std::move(b).build();

  Assessment a;
  a.strategy.rows.resize(2);
  a.beliefs.rows.resize(2);
  a.strategy[i1] = Eigen::Vector4d(0, 0, 0, 1);  // action "a"
  a.strategy[i2] = Eigen::Vector2d(1, 0);        // action "e"
  a.beliefs[i1] = Eigen::VectorXd::Ones(1);
  a.beliefs[i2] = Eigen::Vector2d(1, 0);         // mass on node c (first member)
  PbeReport rep = is_pbe(g, a);
  CHECK(rep.pass);
}
