#include "efg/generators.hpp"

#include <cmath>
#include <deque>
#include <vector>

namespace efg {

namespace {

constexpr long long kNodeGuard = 10'000'000;

// Exact node count of a goof tree stage with m outcomes left and k actions.
long long goof_nodes(int m, int k) {
  if (m == 1) return 1;  // no further chance stage; placeholder terminal
  const long long child = m > 2 ? goof_nodes(m - 1, k) : 1;
  return 1 + static_cast<long long>(m) * (1 + static_cast<long long>(k) * (1 + k * child));
}

struct GoofTables {
  Eigen::VectorXd base;                 // root categorical distribution
  std::vector<double> r1, r2;           // rewards indexed [o][a1][a2]
};

GoofTables sample_tables(const GenGoofParams& params) {
  const int k = params.k;
  Rng rng(params.seed);
  GoofTables t;
  // Simplex-uniform via normalized exponentials.
  t.base.resize(k);
  for (int o = 0; o < k; ++o) t.base[o] = -std::log(uniform_unit(rng));
  t.base /= t.base.sum();
  t.r1.resize(static_cast<std::size_t>(k) * k * k);
  t.r2.resize(t.r1.size());
  for (std::size_t i = 0; i < t.r1.size(); ++i) {
    t.r1[i] = uniform_unit(rng) * params.u_max;
    t.r2[i] = uniform_unit(rng) * params.u_max;
  }
  return t;
}

Game build_goof(const GenGoofParams& params, bool private_variant) {
  const int k = params.k;
  if (k < 2 || k > 26) throw GameError("goof generator: k must be in [2, 26]");
  if (params.u_max <= 0.0) throw GameError("goof generator: u_max must be positive");
  if (goof_nodes(k, k) > kNodeGuard)
    throw GameError("goof generator: tree exceeds the node guard");

  const GoofTables tables = sample_tables(params);
  GameBuilder b(2);
  std::vector<std::string> player_actions;
  for (int a = 0; a < k; ++a) player_actions.push_back("a" + std::to_string(a + 1));

  const auto reward = [&](int o, int a1, int a2) {
    const std::size_t i = (static_cast<std::size_t>(o) * k + a1) * k + a2;
    return std::pair<double, double>(tables.r1[i], tables.r2[i]);
  };

  // One chance stage: outcome, player 1's action, player 2's action, then
  // either the next stage or a leaf carrying the accumulated rewards.
  struct Stage {
    NodeId parent;
    std::string edge;
    std::vector<int> outcomes;  // remaining, ascending
    double acc1, acc2;
  };
  std::deque<Stage> queue;
  std::vector<int> all(k);
  for (int o = 0; o < k; ++o) all[o] = o;
  queue.push_back({kNoNode, "", all, 0.0, 0.0});

  while (!queue.empty()) {
    Stage st = std::move(queue.front());
    queue.pop_front();
    NodeId chance = b.add_chance(st.parent, st.edge);
    Eigen::VectorXd probs(st.outcomes.size());
    double denom = 0.0;
    for (int o : st.outcomes) denom += tables.base[o];
    for (std::size_t i = 0; i < st.outcomes.size(); ++i)
      probs[static_cast<int>(i)] = tables.base[st.outcomes[i]] / denom;
    b.set_chance_probs(chance, probs);

    const bool last_round = st.outcomes.size() == 2;

    // Private variant: one player-1 infoset across the hidden outcomes and
    // one player-2 infoset per observed player-1 action.
    InfosetId is1_shared = kNoInfoset;
    std::vector<InfosetId> is2_by_a1;
    if (private_variant) {
      is1_shared = b.add_infoset(1, player_actions);
      for (int a1 = 0; a1 < k; ++a1) is2_by_a1.push_back(b.add_infoset(2, player_actions));
    }

    for (std::size_t oi = 0; oi < st.outcomes.size(); ++oi) {
      const int o = st.outcomes[oi];
      const std::string edge(1, static_cast<char>('A' + o));
      NodeId p1 = b.add_decision(chance, edge, 1);
      b.assign_infoset(p1, private_variant ? is1_shared : b.add_infoset(1, player_actions));
      // Public variant: player 2 sees the outcome but not player 1's
      // current action, so one infoset spans all of player 1's actions.
      InfosetId is2_shared =
          private_variant ? kNoInfoset : b.add_infoset(2, player_actions);
      for (int a1 = 0; a1 < k; ++a1) {
        NodeId p2 = b.add_decision(p1, player_actions[a1], 2);
        b.assign_infoset(p2, private_variant ? is2_by_a1[a1] : is2_shared);
        for (int a2 = 0; a2 < k; ++a2) {
          const auto [g1, g2] = reward(o, a1, a2);
          const double acc1 = st.acc1 + g1, acc2 = st.acc2 + g2;
          if (last_round) {
            b.add_terminal(p2, player_actions[a2], Eigen::Vector2d(acc1, acc2));
          } else {
            std::vector<int> rest;
            for (int e : st.outcomes)
              if (e != o) rest.push_back(e);
            queue.push_back({p2, player_actions[a2], std::move(rest), acc1, acc2});
          }
        }
      }
    }
  }
  return std::move(b).build();
}

}  // namespace

Game gen_goof(const GenGoofParams& params) { return build_goof(params, false); }

Game private_gen_goof(const GenGoofParams& params) { return build_goof(params, true); }

Game fixture_figure1() {
  GameBuilder b(2);
  NodeId root = b.add_decision(kNoNode, "", 1);
  b.assign_infoset(root, b.add_infoset(1, {"a", "b", "c", "d"}));
  b.add_terminal(root, "a", Eigen::Vector2d(3, 0));
  NodeId nb = b.add_decision(root, "b", 2);
  NodeId nc = b.add_decision(root, "c", 2);
  b.add_terminal(root, "d", Eigen::Vector2d(1, 0));
  InfosetId i2 = b.add_infoset(2, {"e", "f"});
  b.assign_infoset(nb, i2);
  b.assign_infoset(nc, i2);
  b.add_terminal(nb, "e", Eigen::Vector2d(1, 2));
  b.add_terminal(nb, "f", Eigen::Vector2d(2, 0));
  b.add_terminal(nc, "e", Eigen::Vector2d(2, 3));
  b.add_terminal(nc, "f", Eigen::Vector2d(0, 1));
  return std::move(b).build();
}

Assessment fixture_figure1_assessment() {
  Assessment a;
  a.strategy.rows = {Eigen::Vector4d(1, 0, 0, 0), Eigen::Vector2d(1, 0)};
  a.beliefs.rows = {Eigen::VectorXd::Ones(1), Eigen::Vector2d(0, 1)};
  return a;
}

Game fixture_figure3() {
  GameBuilder b(3);
  auto u = [](double x, double y, double z) { return Eigen::Vector3d(x, y, z); };
  NodeId root = b.add_decision(kNoNode, "", 1);
  b.assign_infoset(root, b.add_infoset(1, {"a", "b", "c"}));
  b.add_terminal(root, "a", u(1, 0, 0));
  NodeId nb = b.add_decision(root, "b", 2);
  NodeId nc = b.add_decision(root, "c", 3);
  b.assign_infoset(nb, b.add_infoset(2, {"d", "e"}));
  b.assign_infoset(nc, b.add_infoset(3, {"f", "g"}));
  b.add_terminal(nc, "f", u(2, 0, 1));
  b.add_terminal(nc, "g", u(0, 1, 2));
  NodeId nbd = b.add_decision(nb, "d", 3);
  NodeId nbe = b.add_decision(nb, "e", 3);
  InfosetId i3 = b.add_infoset(3, {"h", "i"});
  b.assign_infoset(nbd, i3);
  b.assign_infoset(nbe, i3);
  b.add_terminal(nbd, "h", u(1, 2, 0));
  b.add_terminal(nbd, "i", u(0, 1, 1));
  b.add_terminal(nbe, "h", u(2, 1, 0));
  b.add_terminal(nbe, "i", u(1, 0, 2));
  return std::move(b).build();
}

Assessment fixture_figure3_assessment() {
  Assessment a;
  // Infoset order: player 1 root, player 2 at b, player 3 at c, player 3
  // at {bd, be}.
  a.strategy.rows = {Eigen::Vector3d(0, 0, 1), Eigen::Vector2d(1, 0),
                     Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 0)};
  a.beliefs.rows = {Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1),
                    Eigen::VectorXd::Ones(1), Eigen::Vector2d(0, 1)};
  return a;
}

Game fixture_matching_pennies() {
  GameBuilder b(2);
  NodeId root = b.add_decision(kNoNode, "", 1);
  b.assign_infoset(root, b.add_infoset(1, {"H", "T"}));
  NodeId h = b.add_decision(root, "H", 2);
  NodeId t = b.add_decision(root, "T", 2);
  InfosetId i2 = b.add_infoset(2, {"h", "t"});
  b.assign_infoset(h, i2);
  b.assign_infoset(t, i2);
  b.add_terminal(h, "h", Eigen::Vector2d(1, -1));
  b.add_terminal(h, "t", Eigen::Vector2d(-1, 1));
  b.add_terminal(t, "h", Eigen::Vector2d(-1, 1));
  b.add_terminal(t, "t", Eigen::Vector2d(1, -1));
  return std::move(b).build();
}

Game fixture_assessments_example() {
  GameBuilder b(3);
  auto u = [](double x, double y, double z) { return Eigen::Vector3d(x, y, z); };
  NodeId root = b.add_decision(kNoNode, "", 1);
  b.assign_infoset(root, b.add_infoset(1, {"U", "D"}));
  NodeId nu = b.add_decision(root, "U", 2);
  NodeId nd = b.add_decision(root, "D", 2);
  b.assign_infoset(nu, b.add_infoset(2, {"L", "R"}));
  b.assign_infoset(nd, b.add_infoset(2, {"A", "B"}));
  NodeId nul = b.add_decision(nu, "L", 3);
  NodeId nur = b.add_decision(nu, "R", 3);
  InfosetId i13 = b.add_infoset(3, {"X", "Y"});
  b.assign_infoset(nul, i13);
  b.assign_infoset(nur, i13);
  NodeId nda = b.add_decision(nd, "A", 1);
  NodeId ndb = b.add_decision(nd, "B", 1);
  InfosetId i21 = b.add_infoset(1, {"P", "Q"});
  b.assign_infoset(nda, i21);
  b.assign_infoset(ndb, i21);
  b.add_terminal(nul, "X", u(1, 0, 2));
  b.add_terminal(nul, "Y", u(0, 2, 1));
  b.add_terminal(nur, "X", u(2, 1, 0));
  b.add_terminal(nur, "Y", u(1, 1, 1));
  b.add_terminal(nda, "P", u(0, 1, 2));
  b.add_terminal(nda, "Q", u(2, 0, 1));
  b.add_terminal(ndb, "P", u(1, 2, 0));
  b.add_terminal(ndb, "Q", u(0, 0, 2));
  return std::move(b).build();
}

Assessment fixture_assessments_example_assessment() {
  Assessment a;
  // Infoset order: P1 root, P2 after U, P2 after D, P3 {UL, UR},
  // P1 {DA, DB}.
  a.strategy.rows = {Eigen::Vector2d(1.0 / 3, 2.0 / 3), Eigen::Vector2d(0.5, 0.5),
                     Eigen::Vector2d(0, 1), Eigen::Vector2d(0, 1),
                     Eigen::Vector2d(1, 0)};
  a.beliefs.rows = {Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1),
                    Eigen::VectorXd::Ones(1), Eigen::Vector2d(0.5, 0.5),
                    Eigen::Vector2d(0, 1)};
  return a;
}

}  // namespace efg
