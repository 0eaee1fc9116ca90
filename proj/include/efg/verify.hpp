#pragma once

#include <optional>

#include "efg/game.hpp"
#include "efg/io.hpp"
#include "efg/plausibility.hpp"
#include "efg/strategy.hpp"

namespace efg {

inline constexpr double kVerifyTol = 1e-6;

struct RationalityReport {
  bool pass = true;
  double max_violation = 0.0;     // largest believed single-action gain
  InfosetId witness_infoset = kNoInfoset;
  int witness_action = -1;
};

// No single-infoset action deviation improves believed utility by more
// than tol anywhere.
RationalityReport is_sequentially_rational(const Game& game, const Assessment& assessment,
                                           double tol = kVerifyTol);

struct BayesReport {
  bool pass = true;
  double max_deviation = 0.0;     // |mu(h|I) - r(h)/r(I)| over reachable I
  InfosetId witness_infoset = kNoInfoset;
};

// Beliefs match conditional reach probabilities at every infoset the
// profile reaches with positive probability; unreached infosets are free.
BayesReport satisfies_bayes(const Game& game, const Assessment& assessment,
                            double tol = kVerifyTol);

struct AgmReport {
  bool pass = true;
  std::optional<Contradiction> contradiction;
  // Rationalizing order's generating pairs when pass; the bad pair if not.
  Json certificate;
};

// The assessment is rationalized by some plausibility order: builds the
// profile-induced order and merges the belief-support constraints.
AgmReport is_agm_consistent(const Game& game, const Assessment& assessment);

struct PbeReport {
  RationalityReport rationality;
  BayesReport bayes;
  AgmReport agm;
  bool pass = false;
};

PbeReport is_pbe(const Game& game, const Assessment& assessment, double tol = kVerifyTol);

Json pbe_report_json(const PbeReport& report);

// max over infosets and actions of the believed gain from a one-shot
// deviation, floored at zero.
double worst_case_local_regret(const Game& game, const Assessment& assessment);

// Best improvement achievable by rewriting the owner's pure continuation
// strategy on every own infoset weakly below `infoset`, in believed
// utility at `infoset`.
double full_believed_regret(const Game& game, const Assessment& assessment,
                            InfosetId infoset);

}  // namespace efg
