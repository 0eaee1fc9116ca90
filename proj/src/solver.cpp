#include "efg/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "efg/plausibility.hpp"
#include "efg/values.hpp"
#include "efg/verify.hpp"

namespace efg {

Eigen::VectorXd regret_matching(const Eigen::VectorXd& cum_regrets) {
  Eigen::VectorXd pos = cum_regrets.cwiseMax(0.0);
  const double total = pos.sum();
  if (total <= 0.0)
    return Eigen::VectorXd::Constant(cum_regrets.size(), 1.0 / cum_regrets.size());
  return pos / total;
}

BeliefSystem update_beliefs(const Game& game, const StrategyProfile& profile) {
  const Eigen::VectorXd r = all_reach(game, profile);
  const std::vector<NodeId> tops = profile_order_tops(game, profile);
  BeliefSystem beliefs;
  beliefs.rows.reserve(game.num_infosets());
  for (const InfoSet& I : game.infosets()) {
    const int m = static_cast<int>(I.members.size());
    Eigen::VectorXd row(m);
    double total = 0.0;
    for (int k = 0; k < m; ++k) total += r[I.members[k]];
    if (total > 0.0) {
      for (int k = 0; k < m; ++k) row[k] = r[I.members[k]] / total;
    } else {
      const std::vector<NodeId> best = most_plausible_members_by_tops(game, tops, I.id);
      row.setZero();
      for (int k = 0; k < m; ++k)
        if (std::find(best.begin(), best.end(), I.members[k]) != best.end())
          row[k] = 1.0 / static_cast<double>(best.size());
    }
    beliefs.rows.push_back(std::move(row));
  }
  return beliefs;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Flattened game arrays for allocation-free iteration loops.
struct Flat {
  const Game& game;
  int n, ni;
  std::vector<NodeId> topo;
  // per infoset
  std::vector<int> act_off, nact, mem_off, owner;
  std::vector<NodeId> members;  // concatenated member lists
  int total_actions = 0, total_members = 0;

  explicit Flat(const Game& g) : game(g), n(g.num_nodes()), ni(g.num_infosets()) {
    topo = g.topo_order();
    act_off.resize(ni);
    nact.resize(ni);
    mem_off.resize(ni);
    owner.resize(ni);
    for (const InfoSet& I : g.infosets()) {
      act_off[I.id] = total_actions;
      nact[I.id] = I.num_actions();
      total_actions += I.num_actions();
      mem_off[I.id] = total_members;
      total_members += static_cast<int>(I.members.size());
      owner[I.id] = I.owner;
      for (NodeId m : I.members) members.push_back(m);
    }
  }

  int nmem(InfosetId s) const {
    return (s + 1 < ni ? mem_off[s + 1] : total_members) - mem_off[s];
  }

  StrategyProfile unflatten(const std::vector<double>& flat, double scale) const {
    StrategyProfile p;
    p.rows.reserve(ni);
    for (int s = 0; s < ni; ++s) {
      Eigen::VectorXd row(nact[s]);
      for (int a = 0; a < nact[s]; ++a) row[a] = flat[act_off[s] + a] * scale;
      p.rows.push_back(std::move(row));
    }
    return p;
  }
};

void backward_sweep(const Flat& f, const std::vector<double>& sigma, std::vector<double>& v1,
                    std::vector<double>& v2) {
  for (auto it = f.topo.rbegin(); it != f.topo.rend(); ++it) {
    const Node& nd = f.game.node(*it);
    if (nd.is_terminal()) {
      v1[nd.id] = nd.utility[0];
      v2[nd.id] = nd.utility[1];
      continue;
    }
    double a1 = 0.0, a2 = 0.0;
    if (nd.is_chance()) {
      for (int c = 0; c < nd.num_children(); ++c) {
        const double p = nd.chance_probs[c];
        a1 += p * v1[nd.children[c]];
        a2 += p * v2[nd.children[c]];
      }
    } else {
      const int off = f.act_off[nd.infoset];
      for (int c = 0; c < nd.num_children(); ++c) {
        const double p = sigma[off + c];
        a1 += p * v1[nd.children[c]];
        a2 += p * v2[nd.children[c]];
      }
    }
    v1[nd.id] = a1;
    v2[nd.id] = a2;
  }
}

// max over infosets of bound and of normalized-regret excess over it.
void lemma2_stats(const Flat& f, const std::vector<double>& cum, int t, double& bound_out,
                  double& excess_out) {
  double bound_max = 0.0, excess_max = -std::numeric_limits<double>::infinity();
  const double sqrt_t = std::sqrt(static_cast<double>(t));
  for (int s = 0; s < f.ni; ++s) {
    const double range = f.game.utility_range(f.owner[s]);
    const double bound = range * f.nact[s] / sqrt_t;
    double max_r = 0.0;
    for (int a = 0; a < f.nact[s]; ++a) max_r = std::max(max_r, cum[f.act_off[s] + a]);
    bound_max = std::max(bound_max, bound);
    excess_max = std::max(excess_max, max_r / t - bound);
  }
  bound_out = bound_max;
  excess_out = f.ni == 0 ? 0.0 : excess_max;
}

void require_two_players(const Game& game) {
  if (game.player_count() != 2)
    throw GameError("solver requires exactly two strategic players");
}

}  // namespace

PbeSolveResult pbe_cfr(const Game& game, const SolveConfig& config) {
  require_two_players(game);
  if (config.iterations < 1) throw GameError("iterations must be >= 1");
  const Flat f(game);
  const int T = config.iterations;

  std::vector<double> sigma(f.total_actions), sum_sigma(f.total_actions),
      cum(f.total_actions, 0.0), ub_action(f.total_actions), mu(f.total_members),
      v1(f.n), v2(f.n), reach(f.n);
  std::vector<NodeId> tops(f.n);
  for (int s = 0; s < f.ni; ++s)
    for (int a = 0; a < f.nact[s]; ++a) sigma[f.act_off[s] + a] = 1.0 / f.nact[s];
  sum_sigma = sigma;  // the initial iterate contributes one row
  int rows = 1;
  for (int s = 0; s < f.ni; ++s)
    for (int k = 0; k < f.nmem(s); ++k) mu[f.mem_off[s] + k] = 1.0 / f.nmem(s);

  PbeSolveResult result;
  const auto start = Clock::now();

  auto refresh_beliefs = [&]() {
    // Reach and plausibility tops under the current sigma, in one pass each.
    for (NodeId id : f.topo) {
      const Node& nd = f.game.node(id);
      if (nd.parent == kNoNode) {
        reach[id] = 1.0;
        tops[id] = id;
        continue;
      }
      const Node& p = f.game.node(nd.parent);
      const double pr = p.is_chance() ? p.chance_probs[nd.parent_edge]
                                      : sigma[f.act_off[p.infoset] + nd.parent_edge];
      reach[id] = reach[p.id] * pr;
      tops[id] = pr > 0.0 ? tops[p.id] : id;
    }
    for (int s = 0; s < f.ni; ++s) {
      const int off = f.mem_off[s], m = f.nmem(s);
      double total = 0.0;
      for (int k = 0; k < m; ++k) total += reach[f.members[off + k]];
      if (total > 0.0) {
        for (int k = 0; k < m; ++k) mu[off + k] = reach[f.members[off + k]] / total;
        continue;
      }
      // Unreached: uniform over members whose top is not a strict
      // descendant of another member's top.
      int count = 0;
      for (int k = 0; k < m; ++k) {
        const NodeId h = f.members[off + k];
        bool dominated = false;
        for (int l = 0; l < m && !dominated; ++l) {
          if (l == k) continue;
          const NodeId o = f.members[off + l];
          dominated = tops[o] != tops[h] && game.is_ancestor_or_self(tops[o], tops[h]);
        }
        mu[off + k] = dominated ? -1.0 : 1.0;  // mark; normalized below
        if (!dominated) ++count;
      }
      for (int k = 0; k < m; ++k)
        mu[off + k] = mu[off + k] > 0.0 ? 1.0 / count : 0.0;
    }
  };

  auto checkpoint = [&](int t) {
    Checkpoint cp;
    cp.t = t;
    cp.wall_ms = ms_since(start);
    Assessment avg;
    avg.strategy = f.unflatten(sum_sigma, 1.0 / rows);
    avg.beliefs = update_beliefs(game, avg.strategy);
    cp.metric = worst_case_local_regret(game, avg);
    lemma2_stats(f, cum, t, cp.lemma2_bound, cp.lemma2_excess);
    result.log.checkpoints.push_back(cp);
  };

  for (int t = 1; t <= T; ++t) {
    backward_sweep(f, sigma, v1, v2);
    for (int s = 0; s < f.ni; ++s) {
      const int aoff = f.act_off[s], moff = f.mem_off[s];
      const int na = f.nact[s], m = f.nmem(s);
      const std::vector<double>& vj = f.owner[s] == 1 ? v1 : v2;
      for (int a = 0; a < na; ++a) ub_action[aoff + a] = 0.0;
      for (int k = 0; k < m; ++k) {
        const double weight = mu[moff + k];
        if (weight == 0.0) continue;
        const Node& h = f.game.node(f.members[moff + k]);
        for (int a = 0; a < na; ++a) ub_action[aoff + a] += weight * vj[h.children[a]];
      }
      double ub = 0.0;
      for (int a = 0; a < na; ++a) ub += sigma[aoff + a] * ub_action[aoff + a];
      double pos_total = 0.0;
      for (int a = 0; a < na; ++a) {
        cum[aoff + a] += ub_action[aoff + a] - ub;
        if (cum[aoff + a] > 0.0) pos_total += cum[aoff + a];
      }
      // Regret-match the next iterate in place.
      if (pos_total > 0.0)
        for (int a = 0; a < na; ++a)
          sigma[aoff + a] = std::max(cum[aoff + a], 0.0) / pos_total;
      else
        for (int a = 0; a < na; ++a) sigma[aoff + a] = 1.0 / na;
    }
    if (t < T) {
      for (int i = 0; i < f.total_actions; ++i) sum_sigma[i] += sigma[i];
      ++rows;
      refresh_beliefs();
    }
    if (config.checkpoint_every > 0 && (t % config.checkpoint_every == 0 || t == T))
      checkpoint(t);
  }

  result.assessment.strategy = f.unflatten(sum_sigma, 1.0 / rows);
  result.assessment.beliefs = update_beliefs(game, result.assessment.strategy);
  return result;
}

CfrResult cfr(const Game& game, const SolveConfig& config) {
  require_two_players(game);
  if (config.iterations < 1) throw GameError("iterations must be >= 1");
  const Flat f(game);
  const int T = config.iterations;

  std::vector<double> sigma(f.total_actions), sum_sigma(f.total_actions, 0.0),
      cum(f.total_actions, 0.0), v1(f.n), v2(f.n), r0(f.n), r1(f.n), r2(f.n);
  for (int s = 0; s < f.ni; ++s)
    for (int a = 0; a < f.nact[s]; ++a) sigma[f.act_off[s] + a] = 1.0 / f.nact[s];

  CfrResult result;
  const auto start = Clock::now();

  auto average = [&]() {
    StrategyProfile avg;
    avg.rows.reserve(f.ni);
    for (int s = 0; s < f.ni; ++s) {
      Eigen::VectorXd row(f.nact[s]);
      double total = 0.0;
      for (int a = 0; a < f.nact[s]; ++a) total += sum_sigma[f.act_off[s] + a];
      if (total > 0.0)
        for (int a = 0; a < f.nact[s]; ++a) row[a] = sum_sigma[f.act_off[s] + a] / total;
      else
        row.setConstant(1.0 / f.nact[s]);
      avg.rows.push_back(std::move(row));
    }
    return avg;
  };

  for (int t = 1; t <= T; ++t) {
    backward_sweep(f, sigma, v1, v2);
    // Factored reach: chance and per-player contributions.
    for (NodeId id : f.topo) {
      const Node& nd = f.game.node(id);
      if (nd.parent == kNoNode) {
        r0[id] = r1[id] = r2[id] = 1.0;
        continue;
      }
      const Node& p = f.game.node(nd.parent);
      r0[id] = r0[p.id];
      r1[id] = r1[p.id];
      r2[id] = r2[p.id];
      if (p.is_chance())
        r0[id] *= p.chance_probs[nd.parent_edge];
      else if (p.owner == 1)
        r1[id] *= sigma[f.act_off[p.infoset] + nd.parent_edge];
      else
        r2[id] *= sigma[f.act_off[p.infoset] + nd.parent_edge];
    }
    // Average-strategy accumulation uses sigma^t, before the update.
    for (int s = 0; s < f.ni; ++s) {
      const NodeId h0 = f.members[f.mem_off[s]];
      const double own = f.owner[s] == 1 ? r1[h0] : r2[h0];
      for (int a = 0; a < f.nact[s]; ++a)
        sum_sigma[f.act_off[s] + a] += own * sigma[f.act_off[s] + a];
    }
    // Counterfactual regrets with simultaneous regret-matching updates.
    for (int s = 0; s < f.ni; ++s) {
      const int aoff = f.act_off[s], moff = f.mem_off[s];
      const int na = f.nact[s], m = f.nmem(s);
      const std::vector<double>& vj = f.owner[s] == 1 ? v1 : v2;
      const std::vector<double>& ropp = f.owner[s] == 1 ? r2 : r1;
      double pos_total = 0.0;
      for (int a = 0; a < na; ++a) {
        double regret = 0.0;
        for (int k = 0; k < m; ++k) {
          const Node& h = f.game.node(f.members[moff + k]);
          regret += r0[h.id] * ropp[h.id] * (vj[h.children[a]] - vj[h.id]);
        }
        cum[aoff + a] += regret;
        if (cum[aoff + a] > 0.0) pos_total += cum[aoff + a];
      }
      if (pos_total > 0.0)
        for (int a = 0; a < na; ++a)
          sigma[aoff + a] = std::max(cum[aoff + a], 0.0) / pos_total;
      else
        for (int a = 0; a < na; ++a) sigma[aoff + a] = 1.0 / na;
    }
    if (config.checkpoint_every > 0 && (t % config.checkpoint_every == 0 || t == T)) {
      Checkpoint cp;
      cp.t = t;
      cp.wall_ms = ms_since(start);
      cp.metric = profile_regret(game, average()).total;
      lemma2_stats(f, cum, t, cp.lemma2_bound, cp.lemma2_excess);
      result.log.checkpoints.push_back(cp);
    }
  }
  result.average = average();
  return result;
}

}  // namespace efg
