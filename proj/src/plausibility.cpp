#include "efg/plausibility.hpp"

#include <algorithm>

namespace efg {

namespace {

void check_id(int n, NodeId id) {
  if (id < 0 || id >= n) throw GameError("plausibility: node id out of range");
}

}  // namespace

void PlausibilityOrder::add_equal(NodeId a, NodeId b) {
  check_id(n_, a);
  check_id(n_, b);
  equal_.emplace_back(a, b);
  dirty_ = true;
}

void PlausibilityOrder::add_strict(NodeId more, NodeId less) {
  check_id(n_, more);
  check_id(n_, less);
  strict_.emplace_back(more, less);
  dirty_ = true;
}

void PlausibilityOrder::rebuild() const {
  // Adjacency of the relation graph: an edge a -> b means "a at least as
  // plausible as b"; equalities contribute both directions.
  std::vector<std::vector<NodeId>> adj(n_);
  for (auto& [a, b] : equal_) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& [m, l] : strict_) adj[m].push_back(l);

  // Iterative Tarjan SCC.
  comp_.assign(n_, -1);
  std::vector<int> low(n_, -1), idx(n_, -1);
  std::vector<char> on_stack(n_, 0);
  std::vector<NodeId> scc_stack;
  num_comps_ = 0;
  int counter = 0;
  struct Frame {
    NodeId v;
    std::size_t child;
  };
  std::vector<Frame> frames;
  for (NodeId start = 0; start < n_; ++start) {
    if (idx[start] != -1) continue;
    frames.push_back({start, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      NodeId v = f.v;
      if (f.child == 0) {
        idx[v] = low[v] = counter++;
        scc_stack.push_back(v);
        on_stack[v] = 1;
      }
      bool descended = false;
      while (f.child < adj[v].size()) {
        NodeId w = adj[v][f.child++];
        if (idx[w] == -1) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], idx[w]);
      }
      if (descended) continue;
      if (low[v] == idx[v]) {
        while (true) {
          NodeId w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = 0;
          comp_[w] = num_comps_;
          if (w == v) break;
        }
        ++num_comps_;
      }
      frames.pop_back();
      if (!frames.empty()) {
        NodeId parent = frames.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  // A strict pair inside one component contradicts the preorder axioms.
  bad_.reset();
  for (auto& [m, l] : strict_)
    if (comp_[m] == comp_[l]) {
      bad_ = std::make_pair(m, l);
      break;
    }

  // Component-level reachability bitsets. Tarjan numbers components in
  // reverse topological order: every cross edge points to a smaller id,
  // so a single ascending pass accumulates closures.
  const std::size_t words = (static_cast<std::size_t>(num_comps_) + 63) / 64;
  reach_.assign(num_comps_, std::vector<std::uint64_t>(words, 0));
  for (int c = 0; c < num_comps_; ++c) reach_[c][c / 64] |= 1ull << (c % 64);
  std::vector<std::vector<int>> cadj(num_comps_);
  auto add_cedge = [&](NodeId a, NodeId b) {
    if (comp_[a] != comp_[b]) cadj[comp_[a]].push_back(comp_[b]);
  };
  for (auto& [a, b] : equal_) {
    add_cedge(a, b);
    add_cedge(b, a);
  }
  for (auto& [m, l] : strict_) add_cedge(m, l);
  for (int c = 0; c < num_comps_; ++c) {
    for (int d : cadj[c])
      for (std::size_t w = 0; w < words; ++w) reach_[c][w] |= reach_[d][w];
  }
  dirty_ = false;
}

bool PlausibilityOrder::reaches(int from, int to) const {
  return (reach_[from][to / 64] >> (to % 64)) & 1ull;
}

bool PlausibilityOrder::has_contradiction() const {
  if (dirty_) rebuild();
  return bad_.has_value();
}

std::optional<std::pair<NodeId, NodeId>> PlausibilityOrder::contradiction_witness() const {
  if (dirty_) rebuild();
  return bad_;
}

Ordering PlausibilityOrder::compare(NodeId a, NodeId b) const {
  check_id(n_, a);
  check_id(n_, b);
  if (dirty_) rebuild();
  if (bad_) throw GameError("plausibility order is contradictory");
  const int ca = comp_[a], cb = comp_[b];
  if (ca == cb) return Ordering::Equal;
  const bool ab = reaches(ca, cb), ba = reaches(cb, ca);
  if (ab) return Ordering::FirstMorePlausible;
  if (ba) return Ordering::SecondMorePlausible;
  return Ordering::Incomparable;
}

std::vector<NodeId> PlausibilityOrder::most_plausible_members(const Game& game,
                                                              InfosetId infoset) const {
  const InfoSet& I = game.infoset(infoset);
  std::vector<NodeId> out;
  for (NodeId h : I.members) {
    bool dominated = false;
    for (NodeId other : I.members) {
      if (other == h) continue;
      if (compare(other, h) == Ordering::FirstMorePlausible) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(h);
  }
  return out;
}

Json PlausibilityOrder::to_json() const {
  Json doc;
  Json eq = Json::array(), st = Json::array();
  for (auto& [a, b] : equal_) eq.push_back(Json::array({a, b}));
  for (auto& [a, b] : strict_) st.push_back(Json::array({a, b}));
  doc["equal"] = std::move(eq);
  doc["strict"] = std::move(st);
  return doc;
}

PlausibilityOrder order_from_profile(const Game& game, const StrategyProfile& profile) {
  PlausibilityOrder order(game.num_nodes());
  for (const Node& nd : game.nodes()) {
    if (nd.is_terminal()) continue;
    if (nd.is_chance()) {
      for (NodeId c : nd.children) order.add_equal(nd.id, c);
      continue;
    }
    const Eigen::VectorXd& row = profile[nd.infoset];
    std::vector<NodeId> positive, zero;
    for (int a = 0; a < nd.num_children(); ++a)
      (row[a] > 0.0 ? positive : zero).push_back(nd.children[a]);
    for (NodeId v : positive) order.add_equal(nd.id, v);
    for (NodeId w : zero) order.add_strict(nd.id, w);
    for (NodeId v : positive)
      for (NodeId w : zero) order.add_strict(v, w);
  }
  return order;
}

std::vector<NodeId> profile_order_tops(const Game& game, const StrategyProfile& profile) {
  std::vector<NodeId> tops(game.num_nodes(), kNoNode);
  for (NodeId id : game.topo_order()) {
    const Node& nd = game.node(id);
    if (nd.parent == kNoNode) {
      tops[id] = id;
      continue;
    }
    const Node& p = game.node(nd.parent);
    const double pr =
        p.is_chance() ? p.chance_probs[nd.parent_edge] : profile[p.infoset][nd.parent_edge];
    tops[id] = pr > 0.0 ? tops[p.id] : id;
  }
  return tops;
}

Ordering compare_by_tops(const Game& game, const std::vector<NodeId>& tops, NodeId a,
                         NodeId b) {
  const NodeId ta = tops[a], tb = tops[b];
  if (ta == tb) return Ordering::Equal;
  if (game.is_ancestor_or_self(ta, tb)) return Ordering::FirstMorePlausible;
  if (game.is_ancestor_or_self(tb, ta)) return Ordering::SecondMorePlausible;
  return Ordering::Incomparable;
}

std::vector<NodeId> most_plausible_members_by_tops(const Game& game,
                                                   const std::vector<NodeId>& tops,
                                                   InfosetId infoset) {
  const InfoSet& I = game.infoset(infoset);
  std::vector<NodeId> out;
  for (NodeId h : I.members) {
    bool dominated = false;
    for (NodeId other : I.members) {
      if (other == h) continue;
      if (compare_by_tops(game, tops, other, h) == Ordering::FirstMorePlausible) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(h);
  }
  return out;
}

BeliefUpdateResult update_order_given_belief(const PlausibilityOrder& base,
                                             const Game& game,
                                             const BeliefSystem& beliefs) {
  BeliefUpdateResult result;
  result.order = base;
  PlausibilityOrder& order = result.order;

  auto contradict = [&](NodeId a, NodeId b, std::string reason) {
    result.contradiction = Contradiction{a, b, std::move(reason)};
  };

  if (order.has_contradiction()) {
    auto [a, b] = *order.contradiction_witness();
    contradict(a, b, "base order is already contradictory");
    return result;
  }

  for (const InfoSet& I : game.infosets()) {
    if (I.members.size() < 2) continue;
    std::vector<NodeId> support, rest;
    for (std::size_t k = 0; k < I.members.size(); ++k)
      (beliefs[I.id][static_cast<int>(k)] > 0.0 ? support : rest).push_back(I.members[k]);

    // Positive-belief members must be equally plausible.
    for (std::size_t i = 0; i < support.size(); ++i)
      for (std::size_t j = i + 1; j < support.size(); ++j) {
        const Ordering c = order.compare(support[i], support[j]);
        if (c == Ordering::Equal) continue;
        if (c == Ordering::Incomparable) {
          order.add_equal(support[i], support[j]);
          if (order.has_contradiction()) {
            contradict(support[i], support[j],
                       "equating positive-belief members closes a strict cycle");
            return result;
          }
          continue;
        }
        contradict(support[i], support[j],
                   "positive-belief members are strictly ordered");
        return result;
      }

    // Positive-belief members must dominate zero-belief members.
    for (NodeId v : support)
      for (NodeId w : rest) {
        const Ordering c = order.compare(v, w);
        if (c == Ordering::FirstMorePlausible) continue;
        if (c == Ordering::Incomparable) {
          order.add_strict(v, w);
          if (order.has_contradiction()) {
            contradict(v, w, "required strict relation closes a cycle");
            return result;
          }
          continue;
        }
        contradict(v, w,
                   c == Ordering::Equal
                       ? "zero-belief member is as plausible as a positive one"
                       : "zero-belief member is more plausible than a positive one");
        return result;
      }
  }
  return result;
}

}  // namespace efg
