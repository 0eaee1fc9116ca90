#include "efg/verify.hpp"

#include <algorithm>
#include <cmath>

#include "efg/values.hpp"

namespace efg {

namespace {

// Largest believed deviation gain per infoset from one node-value sweep.
RationalityReport rationality_scan(const Game& game, const Assessment& assessment,
                                   double tol) {
  check_profile(game, assessment.strategy);
  check_beliefs(game, assessment.beliefs);
  const Eigen::MatrixXd v = all_node_values(game, assessment.strategy);
  RationalityReport rep;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (const InfoSet& I : game.infosets()) {
    const int j = I.owner - 1;
    Eigen::VectorXd ub_action = Eigen::VectorXd::Zero(I.num_actions());
    for (std::size_t k = 0; k < I.members.size(); ++k) {
      const Node& h = game.node(I.members[k]);
      const double mu = assessment.beliefs[I.id][static_cast<int>(k)];
      for (int a = 0; a < I.num_actions(); ++a) ub_action[a] += mu * v(j, h.children[a]);
    }
    const double ub = assessment.strategy[I.id].dot(ub_action);
    for (int a = 0; a < I.num_actions(); ++a) {
      const double gain = ub_action[a] - ub;
      if (gain > rep.max_violation) {
        rep.max_violation = gain;
        rep.witness_infoset = I.id;
        rep.witness_action = a;
      }
    }
  }
  if (game.num_infosets() == 0) rep.max_violation = 0.0;
  rep.pass = rep.max_violation <= tol;
  return rep;
}

}  // namespace

RationalityReport is_sequentially_rational(const Game& game, const Assessment& assessment,
                                           double tol) {
  return rationality_scan(game, assessment, tol);
}

double worst_case_local_regret(const Game& game, const Assessment& assessment) {
  return std::max(0.0, rationality_scan(game, assessment, 0.0).max_violation);
}

BayesReport satisfies_bayes(const Game& game, const Assessment& assessment, double tol) {
  check_profile(game, assessment.strategy);
  check_beliefs(game, assessment.beliefs);
  const Eigen::VectorXd r = all_reach(game, assessment.strategy);
  BayesReport rep;
  for (const InfoSet& I : game.infosets()) {
    double total = 0.0;
    for (NodeId m : I.members) total += r[m];
    if (total <= 0.0) continue;  // unreached: Bayes places no constraint
    for (std::size_t k = 0; k < I.members.size(); ++k) {
      const double want = r[I.members[k]] / total;
      const double dev = std::abs(assessment.beliefs[I.id][static_cast<int>(k)] - want);
      if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.witness_infoset = I.id;
      }
    }
  }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

AgmReport is_agm_consistent(const Game& game, const Assessment& assessment) {
  check_profile(game, assessment.strategy);
  check_beliefs(game, assessment.beliefs);
  AgmReport rep;
  PlausibilityOrder base = order_from_profile(game, assessment.strategy);
  BeliefUpdateResult res = update_order_given_belief(base, game, assessment.beliefs);
  if (res.ok()) {
    rep.pass = true;
    rep.certificate = res.order.to_json();
  } else {
    rep.pass = false;
    rep.contradiction = res.contradiction;
    rep.certificate = Json{{"bad_pair", {res.contradiction->a, res.contradiction->b}},
                           {"reason", res.contradiction->reason}};
  }
  return rep;
}

PbeReport is_pbe(const Game& game, const Assessment& assessment, double tol) {
  PbeReport rep;
  rep.rationality = is_sequentially_rational(game, assessment, tol);
  rep.bayes = satisfies_bayes(game, assessment, tol);
  rep.agm = is_agm_consistent(game, assessment);
  rep.pass = rep.rationality.pass && rep.bayes.pass && rep.agm.pass;
  return rep;
}

Json pbe_report_json(const PbeReport& report) {
  Json doc;
  doc["sequential_rationality"] = {
      {"pass", report.rationality.pass},
      {"max_violation", report.rationality.max_violation},
      {"witness",
       {{"infoset", report.rationality.witness_infoset},
        {"action", report.rationality.witness_action}}}};
  doc["bayes"] = {{"pass", report.bayes.pass},
                  {"max_deviation", report.bayes.max_deviation},
                  {"witness_infoset", report.bayes.witness_infoset}};
  doc["agm"] = {{"pass", report.agm.pass}, {"certificate", report.agm.certificate}};
  doc["pass"] = report.pass;
  return doc;
}

double full_believed_regret(const Game& game, const Assessment& assessment,
                            InfosetId infoset) {
  const InfoSet& I = game.infoset(infoset);
  const int player = I.owner;
  const Eigen::MatrixXd v = all_node_values(game, assessment.strategy);

  // Baseline believed utility at the infoset under the current profile.
  double baseline = 0.0;
  for (std::size_t k = 0; k < I.members.size(); ++k)
    baseline += assessment.beliefs[infoset][static_cast<int>(k)] * v(player - 1, I.members[k]);

  // Weights for nodes below the infoset: belief at the entry member times
  // the chance-and-opponent reach from there down.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(game.num_nodes());
  for (std::size_t k = 0; k < I.members.size(); ++k)
    w[I.members[k]] = assessment.beliefs[infoset][static_cast<int>(k)];
  for (NodeId id : game.topo_order()) {
    const Node& nd = game.node(id);
    if (nd.is_terminal() || w[id] == 0.0) continue;
    for (int c = 0; c < nd.num_children(); ++c) {
      double pr = 1.0;
      if (nd.is_chance())
        pr = nd.chance_probs[c];
      else if (nd.owner != player)
        pr = assessment.strategy[nd.infoset][c];
      w[nd.children[c]] += w[id] * pr;
    }
  }

  // The owner's infosets weakly below `infoset`, deepest first.
  std::vector<InfosetId> region{infoset};
  for (const InfoSet& J : game.infosets()) {
    if (J.owner != player || J.id == infoset) continue;
    bool below = false;
    for (NodeId m : I.members)
      if (game.is_ancestor_or_self(m, J.members.front())) below = true;
    if (below) region.push_back(J.id);
  }
  std::stable_sort(region.begin(), region.end(), [&](InfosetId a, InfosetId b) {
    return game.infoset_depth(a) > game.infoset_depth(b);
  });

  std::vector<int> chosen(game.num_infosets(), -1);
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
      if (nd.is_decision() && nd.owner == player && chosen[nd.infoset] >= 0) {
        NodeId c = nd.children[chosen[nd.infoset]];
        if (!done[c]) {
          stack.push_back(c);
          continue;
        }
        val[id] = val[c];
        done[id] = 1;
        stack.pop_back();
        continue;
      }
      bool ready = true;
      for (NodeId c : nd.children)
        if (!done[c]) {
          stack.push_back(c);
          ready = false;
        }
      if (!ready) continue;
      double acc = 0.0;
      for (int c = 0; c < nd.num_children(); ++c) {
        const double pr = nd.is_chance() ? nd.chance_probs[c]
                                         : assessment.strategy[nd.infoset][c];
        acc += pr * val[nd.children[c]];
      }
      val[id] = acc;
      done[id] = 1;
      stack.pop_back();
    }
    return val[start];
  };

  for (InfosetId s : region) {
    const InfoSet& J = game.infoset(s);
    int best = 0;
    double best_v = 0.0;
    for (int a = 0; a < J.num_actions(); ++a) {
      double acc = 0.0;
      for (NodeId m : J.members) acc += w[m] * eval(game.node(m).children[a]);
      if (a == 0 || acc > best_v) {
        best = a;
        best_v = acc;
      }
    }
    chosen[s] = best;
  }

  double improved = 0.0;
  for (std::size_t k = 0; k < I.members.size(); ++k)
    improved += assessment.beliefs[infoset][static_cast<int>(k)] * eval(I.members[k]);
  return improved - baseline;
}

}  // namespace efg
