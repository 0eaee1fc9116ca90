#pragma once

#include <cstdint>

#include "efg/game.hpp"
#include "efg/rng.hpp"
#include "efg/strategy.hpp"

namespace efg {

struct GenGoofParams {
  int k = 4;             // outcomes at the root; the game has k-1 rounds
  double u_max = 10.0;   // per-round reward cap
  std::uint64_t seed = 0;
};

// Multi-round outcome-and-bid game: each round a chance outcome is drawn
// without replacement (base distribution sampled uniformly from the
// simplex, renormalized over the residual support), then player 1 and
// player 2 each pick one of k actions; per-(outcome, a1, a2) rewards drawn
// uniformly from [0, u_max] accumulate into the leaf utilities. Both
// players observe everything except each other's current-round action.
Game gen_goof(const GenGoofParams& params);

// Same chance distributions, tree shape, and rewards per seed; only the
// information structure differs: neither player sees the current round's
// outcome before moving, and player 2 sees player 1's current action.
// Past rounds are fully public.
Game private_gen_goof(const GenGoofParams& params);

// Hand-built fixtures used throughout the tests.
Game fixture_figure1();
Assessment fixture_figure1_assessment();

// Three-player game with one non-singleton infoset whose only reachable
// belief support contradicts the strategy-induced plausibility order.
Game fixture_figure3();
Assessment fixture_figure3_assessment();

Game fixture_matching_pennies();

// Three-player illustration game with a mixed root strategy and both an
// on-path and an off-path non-singleton infoset.
Game fixture_assessments_example();
Assessment fixture_assessments_example_assessment();

}  // namespace efg
