#include "efg/values.hpp"

#include <algorithm>

namespace efg {

namespace {

double edge_prob(const StrategyProfile& profile, const Node& parent, int edge) {
  if (parent.is_chance()) return parent.chance_probs[edge];
  return profile[parent.infoset][edge];
}

}  // namespace

Reach reach_probability(const Game& game, const StrategyProfile& profile, NodeId node) {
  Reach r;
  r.players = Eigen::VectorXd::Ones(game.player_count());
  NodeId cur = node;
  while (game.node(cur).parent != kNoNode) {
    const Node& nd = game.node(cur);
    const Node& p = game.node(nd.parent);
    const double pr = edge_prob(profile, p, nd.parent_edge);
    if (p.is_chance())
      r.chance *= pr;
    else
      r.players[p.owner - 1] *= pr;
    cur = p.id;
  }
  r.product = r.chance * r.players.prod();
  return r;
}

double infoset_reach(const Game& game, const StrategyProfile& profile, InfosetId infoset) {
  double total = 0.0;
  for (NodeId m : game.infoset(infoset).members)
    total += reach_probability(game, profile, m).product;
  return total;
}

Eigen::VectorXd all_reach(const Game& game, const StrategyProfile& profile) {
  Eigen::VectorXd r(game.num_nodes());
  for (NodeId id : game.topo_order()) {
    const Node& nd = game.node(id);
    if (nd.parent == kNoNode) {
      r[id] = 1.0;
      continue;
    }
    const Node& p = game.node(nd.parent);
    r[id] = r[p.id] * edge_prob(profile, p, nd.parent_edge);
  }
  return r;
}

Eigen::MatrixXd all_node_values(const Game& game, const StrategyProfile& profile) {
  Eigen::MatrixXd v(game.player_count(), game.num_nodes());
  const auto& order = game.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& nd = game.node(*it);
    if (nd.is_terminal()) {
      v.col(nd.id) = nd.utility;
      continue;
    }
    v.col(nd.id).setZero();
    for (int c = 0; c < nd.num_children(); ++c)
      v.col(nd.id) += edge_prob(profile, nd, c) * v.col(nd.children[c]);
  }
  return v;
}

Eigen::VectorXd expected_utility(const Game& game, const StrategyProfile& profile,
                                 NodeId from_node) {
  game.node(from_node);  // range check
  return all_node_values(game, profile).col(from_node);
}

double believed_utility(const Game& game, const Assessment& assessment, InfosetId infoset) {
  const InfoSet& I = game.infoset(infoset);
  const Eigen::MatrixXd v = all_node_values(game, assessment.strategy);
  double total = 0.0;
  for (std::size_t k = 0; k < I.members.size(); ++k)
    total += assessment.beliefs[infoset][static_cast<int>(k)] *
             v(I.owner - 1, I.members[k]);
  return total;
}

double believed_action_utility(const Game& game, const Assessment& assessment,
                               InfosetId infoset, int action) {
  const InfoSet& I = game.infoset(infoset);
  if (action < 0 || action >= I.num_actions())
    throw GameError("believed_action_utility: action index out of range");
  const Eigen::MatrixXd v = all_node_values(game, assessment.strategy);
  double total = 0.0;
  for (std::size_t k = 0; k < I.members.size(); ++k) {
    const Node& h = game.node(I.members[k]);
    total += assessment.beliefs[infoset][static_cast<int>(k)] *
             v(I.owner - 1, h.children[action]);
  }
  return total;
}

BestResponse best_response(const Game& game, const StrategyProfile& profile, int player) {
  if (player < 1 || player > game.player_count())
    throw GameError("best_response: player index out of range");

  // Counterfactual reach: chance and opponent contributions only.
  Eigen::VectorXd cf(game.num_nodes());
  for (NodeId id : game.topo_order()) {
    const Node& nd = game.node(id);
    if (nd.parent == kNoNode) {
      cf[id] = 1.0;
      continue;
    }
    const Node& p = game.node(nd.parent);
    const double pr =
        (p.is_decision() && p.owner == player) ? 1.0 : edge_prob(profile, p, nd.parent_edge);
    cf[id] = cf[p.id] * pr;
  }

  BestResponse br;
  br.action.assign(game.num_infosets(), -1);

  // Process the player's infosets deepest-first so every own decision below
  // an infoset is already resolved when its action values are compared.
  std::vector<InfosetId> own;
  for (const InfoSet& I : game.infosets())
    if (I.owner == player) own.push_back(I.id);
  std::stable_sort(own.begin(), own.end(), [&](InfosetId a, InfosetId b) {
    return game.infoset_depth(a) > game.infoset_depth(b);
  });

  Eigen::VectorXd val = Eigen::VectorXd::Zero(game.num_nodes());
  std::vector<char> done(game.num_nodes(), 0);
  std::vector<NodeId> stack;
  auto eval = [&](NodeId start) {
    stack.push_back(start);
    while (!stack.empty()) {
      NodeId id = stack.back();
      const Node& nd = game.node(id);
      if (done[id]) {
        stack.pop_back();
        continue;
      }
      if (nd.is_terminal()) {
        val[id] = nd.utility[player - 1];
        done[id] = 1;
        stack.pop_back();
        continue;
      }
      bool ready = true;
      if (nd.is_decision() && nd.owner == player) {
        NodeId c = nd.children[br.action[nd.infoset]];
        if (!done[c]) {
          stack.push_back(c);
          ready = false;
        }
        if (ready) {
          val[id] = val[c];
          done[id] = 1;
          stack.pop_back();
        }
        continue;
      }
      for (NodeId c : nd.children)
        if (!done[c]) {
          stack.push_back(c);
          ready = false;
        }
      if (!ready) continue;
      double v = 0.0;
      for (int c = 0; c < nd.num_children(); ++c)
        v += edge_prob(profile, nd, c) * val[nd.children[c]];
      val[id] = v;
      done[id] = 1;
      stack.pop_back();
    }
    return val[start];
  };

  for (InfosetId s : own) {
    const InfoSet& I = game.infoset(s);
    int best = 0;
    double best_v = 0.0;
    for (int a = 0; a < I.num_actions(); ++a) {
      double v = 0.0;
      for (NodeId m : I.members) v += cf[m] * eval(game.node(m).children[a]);
      if (a == 0 || v > best_v) {
        best = a;
        best_v = v;
      }
    }
    br.action[s] = best;
  }
  br.value = eval(game.root());
  return br;
}

StrategyProfile apply_best_response(const Game& game, const StrategyProfile& profile,
                                    int player, const BestResponse& br) {
  StrategyProfile out = profile;
  for (const InfoSet& I : game.infosets())
    if (I.owner == player) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(I.num_actions());
      row[br.action[I.id]] = 1.0;
      out[I.id] = std::move(row);
    }
  return out;
}

RegretReport profile_regret(const Game& game, const StrategyProfile& profile) {
  RegretReport rep;
  rep.per_player = Eigen::VectorXd::Zero(game.player_count());
  const Eigen::VectorXd base = expected_utility(game, profile, game.root());
  for (int j = 1; j <= game.player_count(); ++j)
    rep.per_player[j - 1] = best_response(game, profile, j).value - base[j - 1];
  rep.total = rep.per_player.sum();
  return rep;
}

}  // namespace efg
