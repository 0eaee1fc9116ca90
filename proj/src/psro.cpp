#include "efg/psro.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "efg/values.hpp"

namespace efg {

namespace {

std::string hist_step(InfosetId infoset, int policy) {
  return "(" + std::to_string(infoset) + ":" + std::to_string(policy) + ")";
}

// The owner's decision path to an infoset: (infoset, action) pairs from the
// root down, shared by all members under perfect recall.
std::vector<std::pair<InfosetId, int>> own_path(const Game& game, InfosetId infoset) {
  std::vector<std::pair<InfosetId, int>> path;
  const int owner = game.infoset(infoset).owner;
  NodeId id = game.infoset(infoset).members.front();
  while (true) {
    const Node& nd = game.node(id);
    if (nd.parent == kNoNode) break;
    const Node& p = game.node(nd.parent);
    if (p.is_decision() && p.owner == owner)
      path.push_back({p.infoset, nd.parent_edge});
    id = p.id;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

PolicyPool::PolicyPool(const Game& true_game) {
  for (int p = 0; p < 2; ++p) {
    policies[p] = {std::vector<int>(true_game.num_infosets(), 0)};
    added[p].assign(true_game.num_infosets(), {});
  }
}

std::vector<int> PolicyPool::options_at(int player, InfosetId infoset,
                                        int current) const {
  std::vector<int> opts = added[player - 1][infoset];
  auto it = std::lower_bound(opts.begin(), opts.end(), current);
  if (it == opts.end() || *it != current) opts.insert(it, current);
  return opts;
}

EmpiricalGame build_empirical_game(const Game& true_game, const PolicyPool& pool,
                                   int node_cap) {
  if (true_game.player_count() != 2)
    throw GameError("psro: the restricted model requires a two-player true game");
  for (int p = 0; p < 2; ++p) {
    if (pool.policies[p].empty())
      throw GameError("psro: each player needs at least one policy");
    for (const auto& pi : pool.policies[p])
      if (static_cast<int>(pi.size()) != true_game.num_infosets())
        throw GameError("psro: policy row size mismatch");
    if (static_cast<int>(pool.added[p].size()) != true_game.num_infosets())
      throw GameError("psro: added-policy table size mismatch");
    for (const auto& al : pool.added[p])
      for (int k : al)
        if (k < 0 || k >= static_cast<int>(pool.policies[p].size()) ||
            !std::is_sorted(al.begin(), al.end()))
          throw GameError("psro: bad added-policy set");
  }

  GameBuilder b(true_game.player_count());
  std::vector<InfosetId> true_infoset;
  std::vector<std::string> selection_history;
  std::vector<std::vector<int>> options;
  std::vector<char> encountered(true_game.num_infosets(), 0);
  std::map<std::pair<InfosetId, std::string>, InfosetId> index;
  int nodes = 0;

  struct Pending {
    NodeId true_node;
    NodeId parent;
    std::string edge;
    int cur[2];
    std::string hist[2];
  };
  std::vector<Pending> stack{{true_game.root(), kNoNode, "", {0, 0}, {"", ""}}};

  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();

    // Collapse forced decisions: a single selectable policy dictates play.
    std::vector<int> opts;
    const Node* nd = &true_game.node(cur.true_node);
    while (nd->is_decision()) {
      const int p = nd->owner - 1;
      encountered[nd->infoset] = 1;
      opts = pool.options_at(nd->owner, nd->infoset, cur.cur[p]);
      if (opts.size() >= 2) break;
      nd = &true_game.node(nd->children[pool.policies[p][cur.cur[p]][nd->infoset]]);
    }

    if (++nodes > node_cap)
      throw GameError("psro: empirical game exceeds the node cap");

    if (nd->is_terminal()) {
      b.add_terminal(cur.parent, cur.edge, nd->utility);
      continue;
    }
    if (nd->is_chance()) {
      const NodeId id = b.add_chance(cur.parent, cur.edge);
      b.set_chance_probs(id, nd->chance_probs);
      for (int c = nd->num_children() - 1; c >= 0; --c) {
        Pending next = cur;
        next.true_node = nd->children[c];
        next.parent = id;
        next.edge = nd->edge_labels[c];
        stack.push_back(std::move(next));
      }
      continue;
    }

    // A real policy choice.
    const int p = nd->owner - 1;
    const auto key = std::make_pair(nd->infoset, cur.hist[p]);
    auto it = index.find(key);
    if (it == index.end()) {
      std::vector<std::string> labels;
      for (int k : opts) labels.push_back("p" + std::to_string(k));
      const InfosetId s = b.add_infoset(nd->owner, std::move(labels));
      it = index.emplace(key, s).first;
      true_infoset.push_back(nd->infoset);
      selection_history.push_back(cur.hist[p]);
      options.push_back(opts);
    }
    const NodeId id = b.add_decision(cur.parent, cur.edge, nd->owner);
    b.assign_infoset(id, it->second);
    for (int c = static_cast<int>(opts.size()) - 1; c >= 0; --c) {
      const int k = opts[c];
      Pending next = cur;
      next.true_node = nd->children[pool.policies[p][k][nd->infoset]];
      next.parent = id;
      next.edge = "p" + std::to_string(k);
      next.cur[p] = k;
      next.hist[p] = cur.hist[p] + hist_step(nd->infoset, k);
      stack.push_back(std::move(next));
    }
  }
  return EmpiricalGame{std::move(b).build(), std::move(true_infoset),
                       std::move(selection_history), std::move(options),
                       std::move(encountered), std::move(index)};
}

StrategyProfile complete_to_true_game(const Game& true_game,
                                      const EmpiricalGame& empirical,
                                      const PolicyPool& pool,
                                      const StrategyProfile& strategy) {
  StrategyProfile out;
  out.rows.resize(true_game.num_infosets());

  struct State {
    int cur;
    std::string hist;
    double w;
  };
  for (const InfoSet& I : true_game.infosets()) {
    const int j = I.owner;
    const auto& rows = pool.policies[j - 1];

    // Selection states consistent with the owner playing to reach I.
    std::vector<State> states{{0, "", 1.0}};
    for (const auto& [step_infoset, step_action] : own_path(true_game, I.id)) {
      std::vector<State> next;
      for (State& s : states) {
        const std::vector<int> opts = pool.options_at(j, step_infoset, s.cur);
        if (opts.size() < 2) {
          if (rows[s.cur][step_infoset] == step_action) next.push_back(std::move(s));
          continue;
        }
        auto it = empirical.index.find({step_infoset, s.hist});
        for (std::size_t k = 0; k < opts.size(); ++k) {
          const double pr = it != empirical.index.end()
                                ? strategy[it->second][static_cast<int>(k)]
                                : 1.0 / opts.size();
          if (pr <= 0.0 || rows[opts[k]][step_infoset] != step_action) continue;
          next.push_back(
              {opts[k], s.hist + hist_step(step_infoset, opts[k]), s.w * pr});
        }
      }
      states = std::move(next);
    }

    Eigen::VectorXd row = Eigen::VectorXd::Zero(I.num_actions());
    double total = 0.0;
    for (const State& s : states) {
      const std::vector<int> opts = pool.options_at(j, I.id, s.cur);
      if (opts.size() < 2) {
        row[rows[s.cur][I.id]] += s.w;
      } else {
        auto it = empirical.index.find({I.id, s.hist});
        for (std::size_t k = 0; k < opts.size(); ++k) {
          const double pr = it != empirical.index.end()
                                ? strategy[it->second][static_cast<int>(k)]
                                : 1.0 / opts.size();
          row[rows[opts[k]][I.id]] += s.w * pr;
        }
      }
      total += s.w;
    }
    if (total > 0.0)
      row /= total;
    else
      row.setConstant(1.0 / I.num_actions());
    out[I.id] = std::move(row);
  }
  return out;
}

std::vector<int> softmax_infoset_sampler(const std::vector<double>& gains, int m,
                                         double temperature, Rng& rng) {
  const int n = static_cast<int>(gains.size());
  m = std::min(m, n);
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<int> out;
  if (m <= 0) return out;
  if (temperature <= 0.0) {
    std::stable_sort(remaining.begin(), remaining.end(),
                     [&](int a, int c) { return gains[a] > gains[c]; });
    out.assign(remaining.begin(), remaining.begin() + m);
    return out;
  }
  std::vector<double> weight(n);
  while (static_cast<int>(out.size()) < m) {
    double mx = gains[remaining.front()];
    for (int i : remaining) mx = std::max(mx, gains[i]);
    double total = 0.0;
    for (std::size_t k = 0; k < remaining.size(); ++k)
      total += weight[k] = std::exp((gains[remaining[k]] - mx) / temperature);
    const double u = uniform_unit(rng) * total;
    double acc = 0.0;
    std::size_t pick = remaining.size() - 1;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      acc += weight[k];
      if (u < acc) {
        pick = k;
        break;
      }
    }
    out.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<long>(pick));
  }
  return out;
}

PsroResult run_psro(const Game& true_game, const PsroConfig& config) {
  if (config.growth < 1) throw GameError("psro: growth parameter must be >= 1");
  if (config.epochs < 1) throw GameError("psro: need at least one epoch");
  if (config.iterations < 1) throw GameError("psro: need at least one iteration");
  if (true_game.player_count() != 2)
    throw GameError("psro: solvers require a two-player true game");

  Rng rng(config.seed);
  PolicyPool pool(true_game);

  SolveConfig mss_cfg;
  mss_cfg.iterations = config.iterations;
  mss_cfg.algorithm = config.mss;
  mss_cfg.seed = config.seed;
  SolveConfig eval_cfg = mss_cfg;
  eval_cfg.algorithm = Algorithm::CFR;
  if (config.eval_iterations > 0) eval_cfg.iterations = config.eval_iterations;

  auto eval_regret = [&](const EmpiricalGame& emp) {
    StrategyProfile ne = complete_to_true_game(true_game, emp, pool,
                                               cfr(emp.game, eval_cfg).average);
    return profile_regret(true_game, ne).total;
  };

  PsroResult out;
  EmpiricalGame emp = build_empirical_game(true_game, pool, config.node_cap);
  out.epochs.push_back({0, emp.game.num_nodes(), eval_regret(emp)});

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    StrategyProfile target_emp =
        config.mss == Algorithm::CFR
            ? cfr(emp.game, mss_cfg).average
            : pbe_cfr(emp.game, mss_cfg).assessment.strategy;
    StrategyProfile target = complete_to_true_game(true_game, emp, pool, target_emp);
    const BeliefSystem beliefs = update_beliefs(true_game, target);
    const Eigen::MatrixXd target_values = all_node_values(true_game, target);

    // Candidate expansions: infosets occurring in the model where the exact
    // best-response policy is not yet selectable, scored by the believed
    // gain of following that policy from the infoset on instead of the
    // target. The epoch's BR policy becomes a new selectable option at the
    // sampled infosets.
    struct Candidate {
      InfosetId infoset;
      int player;
      int policy;
    };
    std::vector<Candidate> candidates;
    std::vector<double> gains;
    for (int j = 1; j <= 2; ++j) {
      const BestResponse br = best_response(true_game, target, j);
      const Eigen::MatrixXd br_values = all_node_values(
          true_game, apply_best_response(true_game, target, j, br));
      std::vector<int> pi(true_game.num_infosets(), 0);
      for (const InfoSet& I : true_game.infosets())
        if (I.owner == j) pi[I.id] = br.action[I.id];
      auto& pols = pool.policies[j - 1];
      int idx = -1;
      for (std::size_t k = 0; k < pols.size(); ++k)
        if (pols[k] == pi) {
          idx = static_cast<int>(k);
          break;
        }
      if (idx < 0) {
        idx = static_cast<int>(pols.size());
        pols.push_back(std::move(pi));
      }
      for (const InfoSet& I : true_game.infosets()) {
        if (I.owner != j || !emp.encountered[I.id]) continue;
        const auto& al = pool.added[j - 1][I.id];
        if (std::binary_search(al.begin(), al.end(), idx)) continue;
        double gain = 0.0;
        for (std::size_t m = 0; m < I.members.size(); ++m)
          gain += beliefs[I.id][static_cast<int>(m)] *
                  (br_values(j - 1, I.members[m]) -
                   target_values(j - 1, I.members[m]));
        if (gain <= 1e-12) continue;
        candidates.push_back({I.id, j, idx});
        gains.push_back(gain);
      }
    }
    for (int pick : softmax_infoset_sampler(gains, config.growth,
                                            config.temperature, rng)) {
      const Candidate& c = candidates[pick];
      auto& al = pool.added[c.player - 1][c.infoset];
      al.insert(std::upper_bound(al.begin(), al.end(), c.policy), c.policy);
    }

    emp = build_empirical_game(true_game, pool, config.node_cap);
    out.epochs.push_back({epoch, emp.game.num_nodes(), eval_regret(emp)});
  }
  return out;
}

}  // namespace efg
