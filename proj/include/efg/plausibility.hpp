#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "efg/game.hpp"
#include "efg/io.hpp"
#include "efg/strategy.hpp"

namespace efg {

enum class Ordering { Equal, FirstMorePlausible, SecondMorePlausible, Incomparable };

// A pair of nodes whose required relation conflicts with the stored order,
// reported when belief constraints cannot be merged into it.
struct Contradiction {
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  std::string reason;
};

// Total-preorder fragment over game nodes ("at least as plausible as").
// Stores generating pairs (equalities and strict comparisons) and answers
// queries through the transitive closure: strongly connected components of
// the relation graph are equality classes, and a strict pair inside one
// component is a contradiction.
class PlausibilityOrder {
 public:
  explicit PlausibilityOrder(int num_nodes) : n_(num_nodes) {}

  void add_equal(NodeId a, NodeId b);
  // `more` is strictly more plausible than `less`.
  void add_strict(NodeId more, NodeId less);

  // Throws GameError if the order is contradictory.
  Ordering compare(NodeId a, NodeId b) const;

  bool has_contradiction() const;
  // The strict pair that collapsed into one equality class, if any.
  std::optional<std::pair<NodeId, NodeId>> contradiction_witness() const;

  // Members of the infoset not strictly less plausible than any other
  // member; incomparable members count as equally plausible.
  std::vector<NodeId> most_plausible_members(const Game& game, InfosetId infoset) const;

  const std::vector<std::pair<NodeId, NodeId>>& equal_pairs() const { return equal_; }
  const std::vector<std::pair<NodeId, NodeId>>& strict_pairs() const { return strict_; }

  // Debug dump: {"equal": [[a,b],...], "strict": [[a,b],...]}.
  Json to_json() const;

 private:
  void rebuild() const;
  bool reaches(int comp_from, int comp_to) const;

  int n_;
  std::vector<std::pair<NodeId, NodeId>> equal_, strict_;

  mutable bool dirty_ = true;
  mutable std::vector<int> comp_;
  mutable int num_comps_ = 0;
  mutable std::vector<std::vector<std::uint64_t>> reach_;
  mutable std::optional<std::pair<NodeId, NodeId>> bad_;
};

// Order induced by a strategy profile: at a decision node, children played
// with positive probability are as plausible as the node itself; zero-
// probability children are strictly less plausible than the node and than
// every positive-probability sibling. Chance outcomes are always as
// plausible as their parent.
PlausibilityOrder order_from_profile(const Game& game, const StrategyProfile& profile);

// O(|H|) index equivalent to order_from_profile for queries: tops[h] is the
// highest ancestor connected to h through positive-probability edges only.
// Two nodes are equally plausible iff their tops coincide, and h1 is at
// least as plausible as h2 iff tops[h1] is an ancestor of (or equal to)
// tops[h2] in the game tree.
std::vector<NodeId> profile_order_tops(const Game& game, const StrategyProfile& profile);

Ordering compare_by_tops(const Game& game, const std::vector<NodeId>& tops, NodeId a,
                         NodeId b);

std::vector<NodeId> most_plausible_members_by_tops(const Game& game,
                                                   const std::vector<NodeId>& tops,
                                                   InfosetId infoset);

struct BeliefUpdateResult {
  PlausibilityOrder order{0};
  std::optional<Contradiction> contradiction;
  bool ok() const { return !contradiction.has_value(); }
};

// Merges belief-support constraints into a copy of `base`: within each
// infoset, positive-belief members must be equally plausible and strictly
// more plausible than zero-belief members. Missing relations are added;
// conflicting ones yield a Contradiction describing the first bad pair.
BeliefUpdateResult update_order_given_belief(const PlausibilityOrder& base,
                                             const Game& game,
                                             const BeliefSystem& beliefs);

}  // namespace efg
