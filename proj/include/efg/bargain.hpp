#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "efg/game.hpp"
#include "efg/rng.hpp"

namespace efg {

// Alternating-offer bargaining over a public pool of discrete items, with
// private integer valuations, private outside offers, and an optional
// truthful high/low signal about the outside offer's value.
struct BargainParams {
  int types = 3;                  // distinct item types
  Eigen::VectorXi pool;           // item counts per type; sums to m
  int total_value = 10;           // each player's valuation of the full pool
  double signal_threshold = 5.0;  // H iff outside-offer value exceeds this
  double discount = 0.99;         // per-round discount in (0, 1]
  int rounds = 5;                 // negotiation rounds; player 1 opens each
  // Supports of the (uniform) outside-offer distributions. Empty means
  // "every item vector bounded componentwise by the pool".
  std::vector<Eigen::VectorXi> outside_offers1;
  std::vector<Eigen::VectorXi> outside_offers2;
  std::uint64_t seed = 0;
};

// The benchmark configuration: types=3, total_value=10, threshold=5,
// discount=0.99, rounds=5, and one of five fixed pools chosen by
// seed % 5. Outside offers stay at their default (uniform over vectors
// bounded by the pool).
BargainParams bargain_paper_preset(std::uint64_t seed);

struct BargainAction {
  enum class Kind { Deal, Walk, Offer };
  Kind kind = Kind::Walk;
  int offer_index = -1;  // index into BargainSimulator::offers()
  bool reveal = false;   // disclose the H/L signal this turn
  std::string label() const;
  friend bool operator==(const BargainAction&, const BargainAction&) = default;
};

// Episodic black-box simulator. Call reset (or reset_with) before play;
// step() advances one turn and throws GameError on illegal actions.
class BargainSimulator {
 public:
  explicit BargainSimulator(BargainParams params);

  // Samples (v1, v2) uniformly from the valuation constraint set by
  // rejection (capped, hard error) and outside offers from their supports.
  void reset(std::uint64_t episode_seed);
  // Deterministic variant with explicit private draws; validates them.
  void reset_with(Eigen::VectorXi v1, Eigen::VectorXi v2, Eigen::VectorXi o1,
                  Eigen::VectorXi o2);

  bool done() const { return done_; }
  int current_player() const;  // 1 or 2
  int round() const { return round_; }
  std::vector<BargainAction> legal_actions() const;
  void step(const BargainAction& action);
  Eigen::Vector2d payoffs() const;  // only valid when done()

  // Everything player j has seen: own private draws plus the public
  // transcript, including opponent signals revealed to this player.
  const std::vector<std::string>& observations(int player) const;

  const BargainParams& params() const { return params_; }
  // Offer catalogue: entry i is player 1's proposed bundle; player 2
  // receives the pool minus that bundle.
  const std::vector<Eigen::VectorXi>& offers() const { return offers_; }
  const Eigen::VectorXi& valuation(int player) const;
  const Eigen::VectorXi& outside_offer(int player) const;
  // H/L signal: "H" iff o_j . v_j > signal_threshold.
  std::string signal(int player) const;

  // Uniformly samples one valuation pair from the constraint set.
  static std::pair<Eigen::VectorXi, Eigen::VectorXi> sample_valuations(
      const BargainParams& params, Rng& rng);
  // Full enumeration of the constraint set (used by the explicit export).
  static std::vector<std::pair<Eigen::VectorXi, Eigen::VectorXi>>
  enumerate_valuations(const BargainParams& params);

 private:
  friend Game bargain_explicit_game(const BargainParams&);
  void start_negotiation();
  void finish(Eigen::Vector2d payoff);
  bool legal(const BargainAction& action) const;

  BargainParams params_;
  std::vector<Eigen::VectorXi> offers_;
  Eigen::VectorXi v_[2], o_[2];
  std::vector<std::string> obs_[2];
  bool started_ = false;
  bool done_ = true;
  int round_ = 0;        // 1-based once negotiation starts
  int turn_ = 1;         // player to move
  int pending_ = -1;     // standing offer index from the other player
  Eigen::Vector2d payoff_{0, 0};
};

// Explicit tree for small instances only (rounds <= 2 and at most 6
// distinct offers); throws GameError otherwise. Chance resolves v1, v2,
// o1, o2 in that order; infosets group decision nodes by the owner's
// observation history.
Game bargain_explicit_game(const BargainParams& params);

}  // namespace efg
