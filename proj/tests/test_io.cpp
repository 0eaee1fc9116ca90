#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "efg/generators.hpp"
#include "efg/io.hpp"
#include "efg/solver.hpp"
#include "support/random_games.hpp"

using namespace efg;
namespace ts = efg::testsupport;

namespace {

// Serialization renumbers nodes into canonical depth-first order, so games
// are compared through their canonical documents rather than raw node ids.
void check_same_game(const Game& a, const Game& b) {
  REQUIRE(a.player_count() == b.player_count());
  REQUIRE(a.num_nodes() == b.num_nodes());
  REQUIRE(a.num_terminals() == b.num_terminals());
  REQUIRE(a.num_infosets() == b.num_infosets());
  for (int s = 0; s < a.num_infosets(); ++s) {
    CHECK(a.infoset(s).owner == b.infoset(s).owner);
    CHECK(a.infoset(s).members.size() == b.infoset(s).members.size());
    CHECK(a.infoset(s).actions == b.infoset(s).actions);
  }
  CHECK(game_to_json(a).dump() == game_to_json(b).dump());
}

}  // namespace

TEST_CASE("game json round trip preserves structure") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Game g = ts::random_game(rng);
    Json doc = game_to_json(g);
    Game h = game_from_json(doc);
    check_same_game(g, h);
    // Serialization is deterministic.
    CHECK(game_to_json(h).dump() == doc.dump());
  }
}

TEST_CASE("fixture games round trip") {
  for (const Game& g : {fixture_figure1(), fixture_figure3(), fixture_matching_pennies(),
                        fixture_assessments_example()}) {
    Game h = game_from_json(game_to_json(g));
    check_same_game(g, h);
  }
}

TEST_CASE("assessment json round trip") {
  Rng rng(17);
  Game g = ts::random_game(rng);
  Assessment a;
  a.strategy = random_profile(g, rng);
  a.beliefs = update_beliefs(g, a.strategy);
  Json doc = assessment_to_json(g, a);
  Assessment b = assessment_from_json(g, doc);
  for (int s = 0; s < g.num_infosets(); ++s) {
    CHECK(a.strategy[s].isApprox(b.strategy[s], 1e-15));
    CHECK(a.beliefs[s].isApprox(b.beliefs[s], 1e-15));
  }
  CHECK(assessment_to_json(g, b).dump() == doc.dump());
}

TEST_CASE("loader rejects malformed documents") {
  Game g = fixture_matching_pennies();
  Json good = game_to_json(g);

  SUBCASE("missing top-level field") {
    Json bad = good;
    bad.erase("infosets");
    CHECK_THROWS_AS(game_from_json(bad), GameError);
  }
  SUBCASE("unknown child reference") {
    Json bad = good;
    bad["nodes"][0]["children"]["H"] = 77;
    CHECK_THROWS_AS(game_from_json(bad), GameError);
  }
  SUBCASE("utility arity mismatch") {
    Json bad = good;
    bad["nodes"][3]["utility"] = {1.0};
    CHECK_THROWS_AS(game_from_json(bad), GameError);
  }
  SUBCASE("membership disagreement") {
    Json bad = good;
    bad["infosets"][1]["members"] = {1};
    CHECK_THROWS_AS(game_from_json(bad), GameError);
  }
  SUBCASE("duplicate node id") {
    Json bad = good;
    bad["nodes"][1]["id"] = 0;
    CHECK_THROWS_AS(game_from_json(bad), GameError);
  }
}

TEST_CASE("assessment loader validates distributions") {
  Game g = fixture_matching_pennies();
  Assessment a;
  a.strategy = uniform_profile(g);
  a.beliefs = uniform_beliefs(g);
  Json doc = assessment_to_json(g, a);

  Json bad = doc;
  bad["strategy"]["0"]["H"] = 0.9;  // no longer sums to 1
  CHECK_THROWS_AS(assessment_from_json(g, bad), GameError);

  bad = doc;
  bad["beliefs"]["1"]["99"] = 0.5;  // not a member
  CHECK_THROWS_AS(assessment_from_json(g, bad), GameError);

  bad = doc;
  bad["strategy"]["0"]["Z"] = 0.0;  // unknown action
  CHECK_THROWS_AS(assessment_from_json(g, bad), GameError);
}

TEST_CASE("file round trip") {
  Game g = fixture_figure1();
  const std::string path = "io_test_game.json";
  save_game(g, path);
  Game h = load_game(path);
  check_same_game(g, h);

  Assessment a = fixture_figure1_assessment();
  const std::string apath = "io_test_assessment.json";
  save_assessment(g, a, apath);
  Assessment b = load_assessment(g, apath);
  CHECK(a.strategy[0].isApprox(b.strategy[0], 1e-15));
  CHECK(a.beliefs[1].isApprox(b.beliefs[1], 1e-15));
  std::remove(path.c_str());
  std::remove(apath.c_str());
}
