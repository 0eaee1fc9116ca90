#include "efg/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace efg {

namespace {

constexpr double kChanceSumTol = 1e-12;

std::string node_str(NodeId id) { return "node " + std::to_string(id); }

}  // namespace

Game::Game(int player_count, std::vector<Node> nodes, NodeId root,
           std::vector<InfoSet> infosets)
    : player_count_(player_count),
      nodes_(std::move(nodes)),
      root_(root),
      infosets_(std::move(infosets)) {
  if (player_count_ < 1) throw GameError("player_count must be >= 1");
  if (root_ < 0 || root_ >= num_nodes()) throw GameError("root id out of range");
  validate();
  build_indices();
}

void Game::validate() const {
  const int n = num_nodes();
  for (int i = 0; i < n; ++i) {
    const Node& nd = nodes_[i];
    if (nd.id != i) throw GameError("node arena index mismatch at " + node_str(i));
    if (nd.children.size() != nd.edge_labels.size())
      throw GameError(node_str(i) + ": children/labels size mismatch");
    if ((nd.parent == kNoNode) != (i == root_))
      throw GameError(node_str(i) + ": exactly the root may lack a parent");
    if (nd.parent != kNoNode) {
      if (nd.parent < 0 || nd.parent >= n) throw GameError(node_str(i) + ": bad parent id");
      const Node& p = nodes_[nd.parent];
      if (nd.parent_edge < 0 || nd.parent_edge >= p.num_children() ||
          p.children[nd.parent_edge] != i)
        throw GameError(node_str(i) + ": parent link inconsistent");
    }
    switch (nd.kind) {
      case NodeKind::Terminal:
        if (!nd.children.empty()) throw GameError(node_str(i) + ": terminal with children");
        if (nd.utility.size() != player_count_)
          throw GameError(node_str(i) + ": terminal utility must have one entry per player");
        break;
      case NodeKind::Chance: {
        if (nd.children.empty()) throw GameError(node_str(i) + ": chance node without outcomes");
        if (nd.chance_probs.size() != nd.num_children())
          throw GameError(node_str(i) + ": chance distribution support mismatch");
        if ((nd.chance_probs.array() <= 0.0).any())
          throw GameError(node_str(i) + ": chance probabilities must be positive");
        if (std::abs(nd.chance_probs.sum() - 1.0) > kChanceSumTol)
          throw GameError(node_str(i) + ": chance distribution does not sum to 1");
        break;
      }
      case NodeKind::Decision:
        if (nd.children.empty()) throw GameError(node_str(i) + ": decision node without actions");
        if (nd.owner < 1 || nd.owner > player_count_)
          throw GameError(node_str(i) + ": decision owner out of range");
        if (nd.infoset == kNoInfoset) throw GameError(node_str(i) + ": decision without infoset");
        break;
    }
    if (nd.kind != NodeKind::Decision && nd.infoset != kNoInfoset)
      throw GameError(node_str(i) + ": only decision nodes belong to infosets");
  }

  // Cycle-freeness / reachability: every node must be reached exactly once
  // by descent from the root.
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{root_};
  int visited = 0;
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (seen[id]) throw GameError(node_str(id) + ": reached twice; not a tree");
    seen[id] = 1;
    ++visited;
    for (NodeId c : nodes_[id].children) stack.push_back(c);
  }
  if (visited != n) throw GameError("arena contains nodes unreachable from the root");

  // Infoset partition and per-infoset coherence.
  std::vector<char> covered(n, 0);
  for (int s = 0; s < num_infosets(); ++s) {
    const InfoSet& I = infosets_[s];
    if (I.id != s) throw GameError("infoset arena index mismatch at " + std::to_string(s));
    if (I.members.empty()) throw GameError("infoset " + std::to_string(s) + " has no members");
    if (I.actions.empty()) throw GameError("infoset " + std::to_string(s) + " has no actions");
    for (NodeId m : I.members) {
      const Node& nd = node(m);
      if (!nd.is_decision() || nd.owner != I.owner || nd.infoset != s)
        throw GameError("infoset " + std::to_string(s) + ": member " + node_str(m) +
                        " does not match");
      if (covered[m])
        throw GameError(node_str(m) + " appears in two infosets");
      covered[m] = 1;
      if (nd.edge_labels != I.actions)
        throw GameError("infoset " + std::to_string(s) + ": member " + node_str(m) +
                        " has a different action set");
    }
  }
  for (int i = 0; i < n; ++i)
    if (nodes_[i].is_decision() && !covered[i])
      throw GameError(node_str(i) + ": decision node missing from its infoset list");

  // Structural perfect recall: the owner's (infoset, action) sequence from
  // the root must be identical across the members of each infoset.
  auto own_sequence = [&](NodeId id, int owner) {
    std::vector<std::pair<InfosetId, int>> seq;
    NodeId cur = id;
    while (nodes_[cur].parent != kNoNode) {
      const Node& p = nodes_[nodes_[cur].parent];
      if (p.is_decision() && p.owner == owner)
        seq.emplace_back(p.infoset, nodes_[cur].parent_edge);
      cur = p.id;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  };
  for (const InfoSet& I : infosets_) {
    auto ref = own_sequence(I.members.front(), I.owner);
    for (std::size_t k = 1; k < I.members.size(); ++k)
      if (own_sequence(I.members[k], I.owner) != ref)
        throw GameError("infoset " + std::to_string(I.id) + " violates perfect recall");
  }
}

void Game::build_indices() {
  const int n = num_nodes();
  topo_order_.clear();
  topo_order_.reserve(n);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  std::int32_t clock = 0;

  // Iterative DFS producing preorder (= topological) plus Euler intervals.
  struct Frame {
    NodeId id;
    int next_child;
  };
  std::vector<Frame> stack{{root_, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_child == 0) {
      tin_[f.id] = clock++;
      topo_order_.push_back(f.id);
    }
    if (f.next_child < nodes_[f.id].num_children()) {
      NodeId c = nodes_[f.id].children[f.next_child++];
      stack.push_back({c, 0});
    } else {
      tout_[f.id] = clock++;
      stack.pop_back();
    }
  }

  infoset_depth_.assign(num_infosets(), 0);
  for (const InfoSet& I : infosets_) {
    int depth = 0;
    NodeId cur = I.members.front();
    while (nodes_[cur].parent != kNoNode) {
      const Node& p = nodes_[nodes_[cur].parent];
      if (p.is_decision() && p.owner == I.owner) ++depth;
      cur = p.id;
    }
    infoset_depth_[I.id] = depth;
  }

  utility_range_.assign(player_count_, 0.0);
  std::vector<double> lo(player_count_, std::numeric_limits<double>::infinity());
  std::vector<double> hi(player_count_, -std::numeric_limits<double>::infinity());
  num_terminals_ = 0;
  max_actions_ = 0;
  for (const Node& nd : nodes_) {
    if (nd.is_terminal()) {
      ++num_terminals_;
      for (int j = 0; j < player_count_; ++j) {
        lo[j] = std::min(lo[j], nd.utility[j]);
        hi[j] = std::max(hi[j], nd.utility[j]);
      }
    } else if (nd.is_decision()) {
      max_actions_ = std::max(max_actions_, nd.num_children());
    }
  }
  for (int j = 0; j < player_count_; ++j) utility_range_[j] = hi[j] - lo[j];
}

NodeId GameBuilder::add_node(NodeId parent, const std::string& edge, NodeKind kind) {
  Node nd;
  nd.id = static_cast<NodeId>(nodes_.size());
  nd.kind = kind;
  nd.parent = parent;
  if (parent != kNoNode) {
    Node& p = nodes_.at(parent);
    nd.parent_edge = p.num_children();
    p.edge_labels.push_back(edge);
    p.children.push_back(nd.id);
  }
  nodes_.push_back(std::move(nd));
  return nodes_.back().id;
}

NodeId GameBuilder::add_terminal(NodeId parent, const std::string& edge,
                                 Eigen::VectorXd utility) {
  NodeId id = add_node(parent, edge, NodeKind::Terminal);
  nodes_[id].utility = std::move(utility);
  return id;
}

NodeId GameBuilder::add_chance(NodeId parent, const std::string& edge) {
  return add_node(parent, edge, NodeKind::Chance);
}

NodeId GameBuilder::add_decision(NodeId parent, const std::string& edge, int owner) {
  NodeId id = add_node(parent, edge, NodeKind::Decision);
  nodes_[id].owner = owner;
  return id;
}

InfosetId GameBuilder::add_infoset(int owner, std::vector<std::string> actions) {
  InfoSet I;
  I.id = static_cast<InfosetId>(infosets_.size());
  I.owner = owner;
  I.actions = std::move(actions);
  infosets_.push_back(std::move(I));
  return infosets_.back().id;
}

void GameBuilder::assign_infoset(NodeId node, InfosetId infoset) {
  nodes_.at(node).infoset = infoset;
  infosets_.at(infoset).members.push_back(node);
}

void GameBuilder::set_chance_probs(NodeId node, Eigen::VectorXd probs) {
  nodes_.at(node).chance_probs = std::move(probs);
}

Game GameBuilder::build() && {
  return Game(player_count_, std::move(nodes_), 0, std::move(infosets_));
}

}  // namespace efg
