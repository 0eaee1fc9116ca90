#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace efg {

using NodeId = std::int32_t;
using InfosetId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr InfosetId kNoInfoset = -1;

// Player 0 is chance; strategic players are 1..player_count.
inline constexpr int kChance = 0;

enum class NodeKind { Chance, Decision, Terminal };

struct Node {
  NodeId id = kNoNode;
  NodeId parent = kNoNode;
  std::int32_t parent_edge = -1;  // index into parent's edge_labels
  NodeKind kind = NodeKind::Terminal;
  int owner = kChance;            // strategic player index, Decision nodes only
  InfosetId infoset = kNoInfoset;
  std::vector<std::string> edge_labels;
  std::vector<NodeId> children;
  Eigen::VectorXd utility;        // Terminal: one entry per strategic player
  Eigen::VectorXd chance_probs;   // Chance: aligned with children

  bool is_terminal() const { return kind == NodeKind::Terminal; }
  bool is_chance() const { return kind == NodeKind::Chance; }
  bool is_decision() const { return kind == NodeKind::Decision; }
  int num_children() const { return static_cast<int>(children.size()); }
};

struct InfoSet {
  InfosetId id = kNoInfoset;
  int owner = 0;
  std::vector<NodeId> members;
  std::vector<std::string> actions;

  int num_actions() const { return static_cast<int>(actions.size()); }
};

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable extensive-form game. Nodes live in a flat arena indexed by
// NodeId; `topo_order()` lists ids with every parent before its children,
// so a reverse scan is a bottom-up sweep. Construction validates the full
// set of structural invariants (tree shape, infoset partition, chance
// distributions, structural perfect recall) and throws GameError on any
// violation. Instances are safe to share across threads.
class Game {
 public:
  Game(int player_count, std::vector<Node> nodes, NodeId root,
       std::vector<InfoSet> infosets);

  int player_count() const { return player_count_; }
  NodeId root() const { return root_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_infosets() const { return static_cast<int>(infosets_.size()); }
  int num_terminals() const { return num_terminals_; }
  int max_actions() const { return max_actions_; }

  const Node& node(NodeId id) const {
    if (id < 0 || id >= num_nodes()) throw GameError("unknown node id " + std::to_string(id));
    return nodes_[id];
  }
  const InfoSet& infoset(InfosetId id) const {
    if (id < 0 || id >= num_infosets())
      throw GameError("unknown infoset id " + std::to_string(id));
    return infosets_[id];
  }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<InfoSet>& infosets() const { return infosets_; }

  // Node ids in parent-before-child order, root first.
  const std::vector<NodeId>& topo_order() const { return topo_order_; }

  // Euler intervals for O(1) ancestor tests: `a` is an ancestor of (or
  // equal to) `b` iff tin(a) <= tin(b) && tout(b) <= tout(a).
  bool is_ancestor_or_self(NodeId a, NodeId b) const {
    return tin_[a] <= tin_[b] && tout_[b] <= tout_[a];
  }

  // Number of the owner's own decisions strictly above any member;
  // identical across members under perfect recall.
  int infoset_depth(InfosetId id) const { return infoset_depth_[id]; }

  // max_z u_j(z) - min_z u_j(z) for strategic player j in 1..player_count.
  double utility_range(int player) const { return utility_range_[player - 1]; }

 private:
  void validate() const;
  void build_indices();

  int player_count_;
  std::vector<Node> nodes_;
  NodeId root_;
  std::vector<InfoSet> infosets_;
  std::vector<NodeId> topo_order_;
  std::vector<std::int32_t> tin_, tout_;
  std::vector<int> infoset_depth_;
  std::vector<double> utility_range_;
  int num_terminals_ = 0;
  int max_actions_ = 0;
};

// Incremental construction helper used by loaders and generators.
class GameBuilder {
 public:
  explicit GameBuilder(int player_count) : player_count_(player_count) {}

  NodeId add_terminal(NodeId parent, const std::string& edge, Eigen::VectorXd utility);
  NodeId add_chance(NodeId parent, const std::string& edge);
  NodeId add_decision(NodeId parent, const std::string& edge, int owner);

  // Infosets may be declared before or after their member nodes exist.
  InfosetId add_infoset(int owner, std::vector<std::string> actions);
  void assign_infoset(NodeId node, InfosetId infoset);
  void set_chance_probs(NodeId node, Eigen::VectorXd probs);

  int player_count() const { return player_count_; }
  NodeId root() const { return nodes_.empty() ? kNoNode : nodes_.front().id; }
  const std::vector<std::string>& infoset_actions(InfosetId id) const {
    return infosets_.at(id).actions;
  }
  const std::vector<NodeId>& infoset_members(InfosetId id) const {
    return infosets_.at(id).members;
  }

  Game build() &&;

 private:
  NodeId add_node(NodeId parent, const std::string& edge, NodeKind kind);

  int player_count_;
  std::vector<Node> nodes_;
  std::vector<InfoSet> infosets_;
};

}  // namespace efg
