#include "efg/bargain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

namespace efg {

namespace {

constexpr int kRejectionCap = 1'000'000;

std::string vec_str(const Eigen::VectorXi& v) {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

// All integer vectors componentwise between zero and `cap`, lexicographic.
std::vector<Eigen::VectorXi> bounded_vectors(const Eigen::VectorXi& cap) {
  std::vector<Eigen::VectorXi> out;
  Eigen::VectorXi cur = Eigen::VectorXi::Zero(cap.size());
  for (;;) {
    out.push_back(cur);
    int i = static_cast<int>(cap.size()) - 1;
    while (i >= 0 && cur[i] == cap[i]) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

bool valuation_pair_ok(const BargainParams& p, const Eigen::VectorXi& v1,
                       const Eigen::VectorXi& v2) {
  if (v1.dot(p.pool) != p.total_value || v2.dot(p.pool) != p.total_value)
    return false;
  for (int i = 0; i < p.types; ++i)
    if (v1[i] + v2[i] == 0) return false;
  for (int i = 0; i < p.types; ++i)
    if (v1[i] > 0 && v2[i] > 0) return true;
  return false;
}

void validate_params(const BargainParams& p) {
  if (p.types < 1) throw GameError("bargain: need at least one item type");
  if (p.pool.size() != p.types || p.pool.minCoeff() < 0)
    throw GameError("bargain: pool must list a non-negative count per type");
  if (p.total_value <= 0) throw GameError("bargain: total_value must be positive");
  if (!(p.signal_threshold > 1.0 && p.signal_threshold < p.total_value))
    throw GameError("bargain: signal threshold must lie in (1, total_value)");
  if (!(p.discount > 0.0 && p.discount <= 1.0))
    throw GameError("bargain: discount must lie in (0, 1]");
  if (p.rounds < 1) throw GameError("bargain: need at least one round");
}

}  // namespace

BargainParams bargain_paper_preset(std::uint64_t seed) {
  static const int kPools[5][3] = {
      {2, 0, 3}, {3, 1, 2}, {1, 2, 2}, {1, 4, 2}, {0, 0, 5}};
  BargainParams p;
  p.pool = Eigen::Vector3i(kPools[seed % 5][0], kPools[seed % 5][1],
                           kPools[seed % 5][2]);
  p.seed = seed;
  return p;
}

std::string BargainAction::label() const {
  switch (kind) {
    case Kind::Deal:
      return "deal";
    case Kind::Walk:
      return "walk";
    case Kind::Offer:
      return "offer" + std::to_string(offer_index) + (reveal ? "+reveal" : "");
  }
  return "?";
}

BargainSimulator::BargainSimulator(BargainParams params)
    : params_(std::move(params)) {
  validate_params(params_);
  offers_ = bounded_vectors(params_.pool);
  if (params_.outside_offers1.empty()) params_.outside_offers1 = offers_;
  if (params_.outside_offers2.empty()) params_.outside_offers2 = offers_;
}

std::pair<Eigen::VectorXi, Eigen::VectorXi> BargainSimulator::sample_valuations(
    const BargainParams& params, Rng& rng) {
  Eigen::VectorXi v1(params.types), v2(params.types);
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    for (int i = 0; i < params.types; ++i) {
      v1[i] = static_cast<int>(uniform_index(rng, params.total_value + 1));
      v2[i] = static_cast<int>(uniform_index(rng, params.total_value + 1));
    }
    if (valuation_pair_ok(params, v1, v2)) return {v1, v2};
  }
  throw GameError("bargain: valuation rejection sampling exceeded its cap");
}

std::vector<std::pair<Eigen::VectorXi, Eigen::VectorXi>>
BargainSimulator::enumerate_valuations(const BargainParams& params) {
  Eigen::VectorXi cap =
      Eigen::VectorXi::Constant(params.types, params.total_value);
  std::vector<Eigen::VectorXi> singles;
  for (const Eigen::VectorXi& v : bounded_vectors(cap))
    if (v.dot(params.pool) == params.total_value) singles.push_back(v);
  std::vector<std::pair<Eigen::VectorXi, Eigen::VectorXi>> out;
  for (const Eigen::VectorXi& a : singles)
    for (const Eigen::VectorXi& b : singles)
      if (valuation_pair_ok(params, a, b)) out.emplace_back(a, b);
  if (out.empty()) throw GameError("bargain: empty valuation constraint set");
  return out;
}

void BargainSimulator::reset(std::uint64_t episode_seed) {
  Rng rng(params_.seed * 0x9E3779B97F4A7C15ULL + episode_seed);
  auto [v1, v2] = sample_valuations(params_, rng);
  const auto& s1 = params_.outside_offers1;
  const auto& s2 = params_.outside_offers2;
  reset_with(std::move(v1), std::move(v2), s1[uniform_index(rng, s1.size())],
             s2[uniform_index(rng, s2.size())]);
}

void BargainSimulator::reset_with(Eigen::VectorXi v1, Eigen::VectorXi v2,
                                  Eigen::VectorXi o1, Eigen::VectorXi o2) {
  if (!valuation_pair_ok(params_, v1, v2))
    throw GameError("bargain: valuations violate the constraint set");
  auto in = [](const std::vector<Eigen::VectorXi>& support,
               const Eigen::VectorXi& o) {
    return std::find(support.begin(), support.end(), o) != support.end();
  };
  if (!in(params_.outside_offers1, o1) || !in(params_.outside_offers2, o2))
    throw GameError("bargain: outside offer not in its distribution support");
  v_[0] = std::move(v1);
  v_[1] = std::move(v2);
  o_[0] = std::move(o1);
  o_[1] = std::move(o2);
  for (int j = 0; j < 2; ++j)
    obs_[j] = {"v=" + vec_str(v_[j]), "o=" + vec_str(o_[j])};
  started_ = true;
  done_ = false;
  round_ = 1;
  turn_ = 1;
  pending_ = -1;
  payoff_ = Eigen::Vector2d::Zero();
}

Eigen::Vector2d BargainSimulator::payoffs() const {
  if (!started_ || !done_) throw GameError("bargain: payoffs before the end");
  return payoff_;
}

int BargainSimulator::current_player() const {
  if (!started_ || done_) throw GameError("bargain: no player to move");
  return turn_;
}

const Eigen::VectorXi& BargainSimulator::valuation(int player) const {
  if (!started_ || player < 1 || player > 2)
    throw GameError("bargain: bad valuation query");
  return v_[player - 1];
}

const Eigen::VectorXi& BargainSimulator::outside_offer(int player) const {
  if (!started_ || player < 1 || player > 2)
    throw GameError("bargain: bad outside-offer query");
  return o_[player - 1];
}

std::string BargainSimulator::signal(int player) const {
  return outside_offer(player).dot(valuation(player)) >
                 params_.signal_threshold
             ? "H"
             : "L";
}

const std::vector<std::string>& BargainSimulator::observations(
    int player) const {
  if (!started_ || player < 1 || player > 2)
    throw GameError("bargain: bad observation query");
  return obs_[player - 1];
}

bool BargainSimulator::legal(const BargainAction& action) const {
  switch (action.kind) {
    case BargainAction::Kind::Deal:
      return pending_ >= 0;
    case BargainAction::Kind::Walk:
      return true;
    case BargainAction::Kind::Offer:
      return action.offer_index >= 0 &&
             action.offer_index < static_cast<int>(offers_.size());
  }
  return false;
}

std::vector<BargainAction> BargainSimulator::legal_actions() const {
  if (!started_ || done_) return {};
  std::vector<BargainAction> out;
  if (pending_ >= 0) out.push_back({BargainAction::Kind::Deal, -1, false});
  out.push_back({BargainAction::Kind::Walk, -1, false});
  for (int i = 0; i < static_cast<int>(offers_.size()); ++i)
    for (bool reveal : {false, true})
      out.push_back({BargainAction::Kind::Offer, i, reveal});
  return out;
}

void BargainSimulator::finish(Eigen::Vector2d payoff) {
  payoff_ = std::move(payoff);
  done_ = true;
}

void BargainSimulator::step(const BargainAction& action) {
  if (!started_ || done_) throw GameError("bargain: game is not in progress");
  if (!legal(action)) throw GameError("bargain: illegal action " + action.label());
  const int actor = turn_;
  const std::string entry = "p" + std::to_string(actor) + ":" + action.label();
  obs_[0].push_back(entry);
  obs_[1].push_back(entry);
  switch (action.kind) {
    case BargainAction::Kind::Deal: {
      const double d = std::pow(params_.discount, round_ - 1);
      const Eigen::VectorXi& mine = offers_[pending_];
      const Eigen::VectorXi other = params_.pool - mine;
      finish({d * mine.dot(v_[0]), d * other.dot(v_[1])});
      return;
    }
    case BargainAction::Kind::Walk: {
      const double d = std::pow(params_.discount, round_);
      finish({d * o_[0].dot(v_[0]), d * o_[1].dot(v_[1])});
      return;
    }
    case BargainAction::Kind::Offer:
      break;
  }
  if (action.reveal)
    obs_[2 - actor].push_back("signal" + std::to_string(actor) + "=" +
                              signal(actor));
  pending_ = action.offer_index;
  if (turn_ == 1) {
    turn_ = 2;
  } else {
    turn_ = 1;
    if (++round_ > params_.rounds) {
      const double d = std::pow(params_.discount, params_.rounds);
      finish({d * o_[0].dot(v_[0]), d * o_[1].dot(v_[1])});
    }
  }
}

Game bargain_explicit_game(const BargainParams& params) {
  BargainSimulator base(params);
  if (params.rounds > 2 || base.offers().size() > 6)
    throw GameError(
        "bargain: explicit tree export requires rounds <= 2 and at most 6 "
        "offers");

  const auto pairs = BargainSimulator::enumerate_valuations(base.params());
  // Group the joint draw by v1 so chance resolves v1, then v2 given v1.
  std::map<std::string, std::vector<const Eigen::VectorXi*>> by_v1;
  std::map<std::string, Eigen::VectorXi> v1_of;
  for (const auto& [a, b] : pairs) {
    by_v1[vec_str(a)].push_back(&b);
    v1_of.emplace(vec_str(a), a);
  }

  GameBuilder builder(2);
  std::map<std::pair<int, std::string>, InfosetId> infosets;

  std::function<void(const BargainSimulator&, NodeId, const std::string&)>
      grow = [&](const BargainSimulator& sim, NodeId parent,
                 const std::string& edge) {
        if (sim.done()) {
          builder.add_terminal(parent, edge, sim.payoffs());
          return;
        }
        const int owner = sim.current_player();
        std::string key;
        for (const std::string& s : sim.observations(owner)) key += s + "|";
        const auto actions = sim.legal_actions();
        auto it = infosets.find({owner, key});
        if (it == infosets.end()) {
          std::vector<std::string> labels;
          for (const BargainAction& a : actions) labels.push_back(a.label());
          it = infosets
                   .emplace(std::pair{owner, key},
                            builder.add_infoset(owner, labels))
                   .first;
        }
        const NodeId id = builder.add_decision(parent, edge, owner);
        builder.assign_infoset(id, it->second);
        for (const BargainAction& a : actions) {
          BargainSimulator next = sim;
          next.step(a);
          grow(next, id, a.label());
        }
      };

  const NodeId root = builder.add_chance(kNoNode, "");
  Eigen::VectorXd v1_probs(static_cast<int>(by_v1.size()));
  int gi = 0;
  for (const auto& [v1_key, group] : by_v1)
    v1_probs[gi++] = static_cast<double>(group.size()) / pairs.size();
  builder.set_chance_probs(root, v1_probs);
  for (const auto& [v1_key, group] : by_v1) {
    const NodeId n_v1 = builder.add_chance(root, "v1=" + v1_key);
    builder.set_chance_probs(
        n_v1, Eigen::VectorXd::Constant(static_cast<int>(group.size()),
                                        1.0 / group.size()));
    for (const Eigen::VectorXi* v2 : group) {
      const auto& s1 = base.params().outside_offers1;
      const auto& s2 = base.params().outside_offers2;
      const NodeId n_v2 = builder.add_chance(n_v1, "v2=" + vec_str(*v2));
      builder.set_chance_probs(
          n_v2, Eigen::VectorXd::Constant(static_cast<int>(s1.size()),
                                          1.0 / s1.size()));
      for (const Eigen::VectorXi& o1 : s1) {
        const NodeId n_o1 = builder.add_chance(n_v2, "o1=" + vec_str(o1));
        builder.set_chance_probs(
            n_o1, Eigen::VectorXd::Constant(static_cast<int>(s2.size()),
                                            1.0 / s2.size()));
        for (const Eigen::VectorXi& o2 : s2) {
          BargainSimulator sim = base;
          sim.reset_with(v1_of.at(v1_key), *v2, o1, o2);
          grow(sim, n_o1, "o2=" + vec_str(o2));
        }
      }
    }
  }
  return std::move(builder).build();
}

}  // namespace efg
