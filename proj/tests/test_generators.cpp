#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "efg/generators.hpp"
#include "efg/io.hpp"

using namespace efg;

TEST_CASE("gen_goof(4) tree shape") {
  GenGoofParams params;
  params.k = 4;
  params.seed = 7;
  Game g = gen_goof(params);
  CHECK(g.num_terminals() == 98304);  // 4*3*2 * 16^3
  CHECK(g.num_nodes() == 133141);
  CHECK(g.player_count() == 2);
  CHECK(g.max_actions() == 4);
  // Player 1 sees everything: singleton infosets. Player 2 misses player
  // 1's current action: infosets of size 4.
  for (const InfoSet& I : g.infosets()) {
    if (I.owner == 1) CHECK(I.members.size() == 1);
    if (I.owner == 2) CHECK(I.members.size() == 4);
  }
}

TEST_CASE("residual chance renormalization") {
  GenGoofParams params;
  params.k = 4;
  params.seed = 12;
  Game g = gen_goof(params);
  const Node& root = g.node(g.root());
  REQUIRE(root.is_chance());
  // Find a second-round chance node after outcome index 0.
  const Node& p1 = g.node(root.children[0]);
  const Node& p2 = g.node(p1.children[0]);
  const Node& next = g.node(p2.children[0]);
  REQUIRE(next.is_chance());
  REQUIRE(next.num_children() == 3);
  const double denom = 1.0 - root.chance_probs[0];
  for (int c = 0; c < 3; ++c)
    CHECK(next.chance_probs[c] ==
          doctest::Approx(root.chance_probs[c + 1] / denom).epsilon(1e-12));
}

TEST_CASE("private variant shares chance and utilities, differs in infosets") {
  GenGoofParams params;
  params.k = 3;
  params.seed = 99;
  Game pub = gen_goof(params);
  Game priv = private_gen_goof(params);
  REQUIRE(pub.num_nodes() == priv.num_nodes());
  for (int i = 0; i < pub.num_nodes(); ++i) {
    const Node& a = pub.node(i);
    const Node& b = priv.node(i);
    CHECK(a.kind == b.kind);
    CHECK(a.parent == b.parent);
    CHECK(a.edge_labels == b.edge_labels);
    if (a.is_terminal()) CHECK(a.utility == b.utility);
    if (a.is_chance()) CHECK(a.chance_probs == b.chance_probs);
  }
  // Private round-1 infosets: player 1's spans the 3 hidden outcomes.
  const Node& first_p1 = priv.node(priv.node(priv.root()).children[0]);
  CHECK(priv.infoset(first_p1.infoset).members.size() == 3);
  // Player 2's infoset groups outcomes for a fixed player-1 action.
  for (const InfoSet& I : priv.infosets())
    if (I.owner == 2 && priv.infoset_depth(I.id) == 0) CHECK(I.members.size() == 3);
}

TEST_CASE("utility bounds") {
  GenGoofParams params;
  params.k = 3;
  params.u_max = 10.0;
  params.seed = 4;
  for (const Game& g : {gen_goof(params), private_gen_goof(params)}) {
    for (const Node& nd : g.nodes()) {
      if (!nd.is_terminal()) continue;
      for (int j = 0; j < 2; ++j) {
        CHECK(nd.utility[j] >= 0.0);
        CHECK(nd.utility[j] <= params.u_max * (params.k - 1));
      }
    }
  }
}

TEST_CASE("same seed reproduces byte-identical serialization") {
  GenGoofParams params;
  params.k = 3;
  params.seed = 123;
  CHECK(game_to_json(gen_goof(params)).dump() == game_to_json(gen_goof(params)).dump());
  CHECK(game_to_json(private_gen_goof(params)).dump() ==
        game_to_json(private_gen_goof(params)).dump());
  GenGoofParams other = params;
  other.seed = 124;
  CHECK(game_to_json(gen_goof(other)).dump() != game_to_json(gen_goof(params)).dump());
}

TEST_CASE("k=2 minimal instance") {
  GenGoofParams params;
  params.k = 2;
  params.seed = 1;
  Game g = private_gen_goof(params);
  CHECK(g.num_nodes() <= 20);
  CHECK(g.num_terminals() == 8);  // 2 outcomes * 2 * 2 actions
}

TEST_CASE("size guard rejects k=5") {
  GenGoofParams params;
  params.k = 5;
  CHECK_THROWS_AS(gen_goof(params), GameError);
}
