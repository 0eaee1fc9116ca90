#include "efg/io.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

namespace efg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw GameError("game json: " + msg); }

const Json& field(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing field '" + key + "'");
  return *it;
}

long long as_id(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where + ": expected an integer id");
  return v.get<long long>();
}

}  // namespace

Json game_to_json(const Game& game) {
  // Canonical node numbering: depth-first preorder with children in edge
  // order, which is the order game_from_json rebuilds nodes in. Serializing
  // a loaded game therefore reproduces the document exactly.
  const int n = game.num_nodes();
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<NodeId> remap(n, kNoNode);
  std::vector<NodeId> stack{game.root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    remap[id] = static_cast<NodeId>(order.size());
    order.push_back(id);
    const Node& nd = game.node(id);
    for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it)
      stack.push_back(*it);
  }

  Json doc;
  doc["players"] = game.player_count();
  doc["root"] = remap[game.root()];
  Json nodes = Json::array();
  Json chance = Json::object();
  for (const NodeId orig : order) {
    const Node& nd = game.node(orig);
    Json e;
    e["id"] = remap[orig];
    if (nd.is_terminal()) {
      e["utility"] = std::vector<double>(nd.utility.data(), nd.utility.data() + nd.utility.size());
    } else {
      e["owner"] = nd.is_chance() ? kChance : nd.owner;
      if (nd.is_decision()) e["infoset"] = nd.infoset;
      Json children = Json::object();
      for (int c = 0; c < nd.num_children(); ++c)
        children[nd.edge_labels[c]] = remap[nd.children[c]];
      e["children"] = std::move(children);
      if (nd.is_chance()) {
        Json probs = Json::object();
        for (int c = 0; c < nd.num_children(); ++c) probs[nd.edge_labels[c]] = nd.chance_probs[c];
        chance[std::to_string(remap[orig])] = std::move(probs);
      }
    }
    nodes.push_back(std::move(e));
  }
  doc["nodes"] = std::move(nodes);
  Json infosets = Json::array();
  for (const InfoSet& I : game.infosets()) {
    Json e;
    e["id"] = I.id;
    e["owner"] = I.owner;
    std::vector<NodeId> members;
    for (NodeId m : I.members) members.push_back(remap[m]);
    std::sort(members.begin(), members.end());
    e["members"] = std::move(members);
    e["actions"] = I.actions;
    infosets.push_back(std::move(e));
  }
  doc["infosets"] = std::move(infosets);
  doc["chance"] = std::move(chance);
  return doc;
}

Game game_from_json(const Json& doc) {
  if (!doc.is_object()) fail("top level must be an object");
  const int players = field(doc, "players", "top level").get<int>();
  const long long root_file_id = as_id(field(doc, "root", "top level"), "root");

  const Json& jnodes = field(doc, "nodes", "top level");
  if (!jnodes.is_array()) fail("'nodes' must be an array");
  std::unordered_map<long long, const Json*> node_entry;
  for (const Json& e : jnodes) {
    const long long id = as_id(field(e, "id", "node entry"), "node id");
    if (!node_entry.emplace(id, &e).second) fail("duplicate node id " + std::to_string(id));
  }
  if (!node_entry.count(root_file_id)) fail("root id not present in 'nodes'");

  const Json& jinfosets = field(doc, "infosets", "top level");
  if (!jinfosets.is_array()) fail("'infosets' must be an array");
  const Json& jchance = field(doc, "chance", "top level");
  if (!jchance.is_object()) fail("'chance' must be an object");

  GameBuilder b(players);

  // Infoset declarations first; file ids remap to declaration order.
  std::unordered_map<long long, InfosetId> is_map;
  std::vector<std::vector<long long>> declared_members;
  for (const Json& e : jinfosets) {
    const std::string where = "infoset entry";
    const long long fid = as_id(field(e, "id", where), "infoset id");
    const int owner = field(e, "owner", where).get<int>();
    std::vector<std::string> actions;
    for (const Json& a : field(e, "actions", where)) actions.push_back(a.get<std::string>());
    InfosetId nid = b.add_infoset(owner, std::move(actions));
    if (!is_map.emplace(fid, nid).second) fail("duplicate infoset id " + std::to_string(fid));
    std::vector<long long> members;
    for (const Json& m : field(e, "members", where)) members.push_back(as_id(m, "member id"));
    declared_members.push_back(std::move(members));
  }

  // Depth-first descent from the root; parents are added before children,
  // which is the order GameBuilder requires.
  std::unordered_map<long long, NodeId> node_map;
  struct Pending {
    long long file_id;
    NodeId parent;
    std::string edge;
  };
  std::vector<Pending> stack{{root_file_id, kNoNode, ""}};
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    const std::string where = "node " + std::to_string(cur.file_id);
    auto it = node_entry.find(cur.file_id);
    if (it == node_entry.end()) fail(where + ": referenced but not declared");
    const Json& e = *it->second;

    NodeId id;
    if (e.contains("utility")) {
      const Json& ju = e["utility"];
      if (!ju.is_array() || static_cast<int>(ju.size()) != players)
        fail(where + ": 'utility' must list one value per player");
      Eigen::VectorXd u(players);
      for (int j = 0; j < players; ++j) u[j] = ju[j].get<double>();
      id = b.add_terminal(cur.parent, cur.edge, std::move(u));
    } else {
      const int owner = field(e, "owner", where).get<int>();
      const Json& jc = field(e, "children", where);
      if (!jc.is_object() || jc.empty()) fail(where + ": 'children' must be a non-empty object");
      if (owner == kChance) {
        id = b.add_chance(cur.parent, cur.edge);
        auto pit = jchance.find(std::to_string(cur.file_id));
        if (pit == jchance.end()) fail(where + ": chance node has no 'chance' distribution");
        Eigen::VectorXd probs(jc.size());
        std::vector<Pending> children;
        int c = 0;
        for (auto& [label, child] : jc.items()) {
          auto q = pit->find(label);
          if (q == pit->end()) fail(where + ": no probability for outcome '" + label + "'");
          probs[c++] = q->get<double>();
          children.push_back({as_id(child, where + " child"), id, label});
        }
        // DFS pops in reverse push order; reversed push restores edge order.
        for (auto rit = children.rbegin(); rit != children.rend(); ++rit)
          stack.push_back(std::move(*rit));
        b.set_chance_probs(id, std::move(probs));
      } else {
        const long long fis = as_id(field(e, "infoset", where), where + " infoset");
        auto sit = is_map.find(fis);
        if (sit == is_map.end()) fail(where + ": unknown infoset " + std::to_string(fis));
        id = b.add_decision(cur.parent, cur.edge, owner);
        b.assign_infoset(id, sit->second);
        // Children follow the infoset's declared action order so strategy
        // rows align across members.
        const std::vector<std::string>& actions = b.infoset_actions(sit->second);
        if (jc.size() != actions.size())
          fail(where + ": children do not match the infoset's action set");
        for (auto rit = actions.rbegin(); rit != actions.rend(); ++rit) {
          auto q = jc.find(*rit);
          if (q == jc.end()) fail(where + ": missing child for action '" + *rit + "'");
          stack.push_back({as_id(*q, where + " child"), id, *rit});
        }
        // DFS pops in reverse push order; reversed push restores action order.
      }
    }
    if (!node_map.emplace(cur.file_id, id).second)
      fail(where + ": node has two parents; not a tree");
  }
  if (node_map.size() != node_entry.size())
    fail("some declared nodes are unreachable from the root");

  // Cross-check declared membership against the tree's infoset assignments.
  for (std::size_t s = 0; s < declared_members.size(); ++s) {
    std::vector<NodeId> want;
    for (long long m : declared_members[s]) {
      auto it = node_map.find(m);
      if (it == node_map.end())
        fail("infoset " + std::to_string(s) + ": member " + std::to_string(m) + " is unknown");
      want.push_back(it->second);
    }
    std::vector<NodeId> got = b.infoset_members(static_cast<InfosetId>(s));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got)
      fail("infoset " + std::to_string(s) +
           ": declared members disagree with node 'infoset' fields");
  }

  return std::move(b).build();
}

Json assessment_to_json(const Game& game, const Assessment& assessment) {
  Json doc;
  Json strategy = Json::object();
  Json beliefs = Json::object();
  for (const InfoSet& I : game.infosets()) {
    Json row = Json::object();
    for (int a = 0; a < I.num_actions(); ++a)
      row[I.actions[a]] = assessment.strategy[I.id][a];
    strategy[std::to_string(I.id)] = std::move(row);
    Json brow = Json::object();
    for (std::size_t k = 0; k < I.members.size(); ++k)
      brow[std::to_string(I.members[k])] = assessment.beliefs[I.id][static_cast<int>(k)];
    beliefs[std::to_string(I.id)] = std::move(brow);
  }
  doc["strategy"] = std::move(strategy);
  doc["beliefs"] = std::move(beliefs);
  return doc;
}

Assessment assessment_from_json(const Game& game, const Json& doc) {
  if (!doc.is_object()) fail("assessment: top level must be an object");
  const Json& jstrat = field(doc, "strategy", "assessment");
  const Json& jbel = field(doc, "beliefs", "assessment");
  Assessment out;
  out.strategy.rows.resize(game.num_infosets());
  out.beliefs.rows.resize(game.num_infosets());
  for (const InfoSet& I : game.infosets()) {
    const std::string key = std::to_string(I.id);
    Eigen::VectorXd srow = Eigen::VectorXd::Zero(I.num_actions());
    auto sit = jstrat.find(key);
    if (sit == jstrat.end()) fail("assessment: no strategy for infoset " + key);
    for (auto& [action, prob] : sit->items()) {
      auto pos = std::find(I.actions.begin(), I.actions.end(), action);
      if (pos == I.actions.end())
        fail("assessment: infoset " + key + " has no action '" + action + "'");
      srow[static_cast<int>(pos - I.actions.begin())] = prob.get<double>();
    }
    out.strategy[I.id] = std::move(srow);

    Eigen::VectorXd brow = Eigen::VectorXd::Zero(static_cast<int>(I.members.size()));
    auto bit = jbel.find(key);
    if (bit == jbel.end()) fail("assessment: no beliefs for infoset " + key);
    for (auto& [node, prob] : bit->items()) {
      const NodeId nid = static_cast<NodeId>(std::stoll(node));
      auto pos = std::find(I.members.begin(), I.members.end(), nid);
      if (pos == I.members.end())
        fail("assessment: node " + node + " is not a member of infoset " + key);
      brow[static_cast<int>(pos - I.members.begin())] = prob.get<double>();
    }
    out.beliefs[I.id] = std::move(brow);
  }
  check_profile(game, out.strategy);
  check_beliefs(game, out.beliefs);
  return out;
}

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw GameError(path + ": " + e.what());
  }
}

void write_json_file(const Json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GameError("cannot write " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace

Game load_game(const std::string& path) { return game_from_json(read_json_file(path)); }

void save_game(const Game& game, const std::string& path) {
  write_json_file(game_to_json(game), path);
}

Assessment load_assessment(const Game& game, const std::string& path) {
  return assessment_from_json(game, read_json_file(path));
}

void save_assessment(const Game& game, const Assessment& assessment,
                     const std::string& path) {
  write_json_file(assessment_to_json(game, assessment), path);
}

}  // namespace efg
