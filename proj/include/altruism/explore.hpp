// Copyright 2026 The Altruism Learning Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALTRUISM_EXPLORE_HPP_
#define ALTRUISM_EXPLORE_HPP_

// Leader action selection under an uncertain follower altruism coefficient:
// expected rewards, exploration bonuses and the conflict-aware reward.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "altruism/belief.hpp"
#include "altruism/errors.hpp"
#include "altruism/game.hpp"

namespace altruism {

enum class StrategyKind { kPassive, kInfoGain, kExpectedRewardGain };

struct ExplorationStrategy {
  StrategyKind kind = StrategyKind::kPassive;
  double lambda = 1.0;
  bool conflict_aware = false;
  // Rewards only expected improvements of F instead of |F' - F|.
  bool positive_part = false;
  // Totals within this (relative) distance of the best are ties, resolved
  // toward the lowest action index.
  double tie_tolerance = 1e-9;

  void Validate() const {
    internal::Require(lambda >= 0.0 && std::isfinite(lambda),
                      "lambda must be nonnegative");
    internal::Require(tie_tolerance >= 0.0, "tie_tolerance must be >= 0");
  }
};

inline const char* StrategyName(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kPassive:
      return "passive";
    case StrategyKind::kInfoGain:
      return "info-gain";
    case StrategyKind::kExpectedRewardGain:
      return "reward-gain";
  }
  return "?";
}

inline StrategyKind ParseStrategyKind(const std::string& name) {
  if (name == "passive") return StrategyKind::kPassive;
  if (name == "info-gain") return StrategyKind::kInfoGain;
  if (name == "reward-gain") return StrategyKind::kExpectedRewardGain;
  throw InputError("unknown strategy '" + name +
                   "' (expected passive, info-gain or reward-gain)");
}

struct ActionEvaluation {
  int action = 0;
  double expected_reward = 0.0;
  double bonus = 0.0;
  double total = 0.0;
  std::vector<double> outcome_distribution;
};

struct Decision {
  std::vector<ActionEvaluation> evaluations;
  int chosen = 0;
};

// Alpha interval with explicit end types.
struct AlphaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool Contains(double alpha) const {
    const bool above = lo_closed ? alpha >= lo : alpha > lo;
    const bool below = hi_closed ? alpha <= hi : alpha < hi;
    return above && below;
  }
};

namespace internal {

inline void RequireRefines(const IntervalBelief& belief,
                           const AltruismGame& game) {
  Require(belief.partition().Refines(PartitionDomain(game)),
          "belief partition does not refine the game's partition");
}

struct Outcome {
  int follower_action = 0;
  double probability = 0.0;
  IntervalBelief belief;
};

// Follower replies to row `leader_action` that the belief deems possible,
// with their probabilities and the belief conditioned on each.
inline std::vector<Outcome> Outcomes(const AltruismGame& game,
                                     const IntervalBelief& belief,
                                     int leader_action) {
  const int n = game.num_follower_actions();
  std::vector<int> reply(belief.num_cells(), -1);
  std::vector<double> prob(n, 0.0);
  for (std::size_t k = 0; k < belief.num_cells(); ++k) {
    if (belief.mass(k) == 0.0) continue;
    reply[k] = FollowerBestResponse(game, leader_action,
                                    belief.Representative(k));
    prob[reply[k]] += belief.mass(k);
  }
  std::vector<Outcome> out;
  for (int j = 0; j < n; ++j) {
    if (prob[j] <= 0.0) continue;
    std::vector<double> keep(belief.num_cells());
    for (std::size_t k = 0; k < keep.size(); ++k) {
      keep[k] = reply[k] == j ? 1.0 : 0.0;
    }
    out.push_back({j, prob[j], belief.Reweighted(keep)});
  }
  return out;
}

inline double SumExpectedRewards(const AltruismGame& game,
                                 const IntervalBelief& belief) {
  double total = 0.0;
  for (int a = 0; a < game.num_leader_actions(); ++a) {
    for (std::size_t k = 0; k < belief.num_cells(); ++k) {
      if (belief.mass(k) == 0.0) continue;
      total += belief.mass(k) *
               LeaderRewardGivenAlpha(game, a, belief.Representative(k));
    }
  }
  return total;
}

}  // namespace internal

// E_{alpha ~ b}[R_R(A_i, alpha)].
inline double ExpectedLeaderReward(const AltruismGame& game,
                                   const IntervalBelief& belief,
                                   int leader_action) {
  internal::RequireRefines(belief, game);
  game.CheckCell(leader_action, 0);
  double total = 0.0;
  for (std::size_t k = 0; k < belief.num_cells(); ++k) {
    if (belief.mass(k) == 0.0) continue;
    total += belief.mass(k) * LeaderRewardGivenAlpha(game, leader_action,
                                                     belief.Representative(k));
  }
  return total;
}

// Probability of each follower reply to row `leader_action`.
inline std::vector<double> PredictedOutcomeDistribution(
    const AltruismGame& game, const IntervalBelief& belief,
    int leader_action) {
  internal::RequireRefines(belief, game);
  game.CheckCell(leader_action, 0);
  std::vector<double> dist(game.num_follower_actions(), 0.0);
  for (std::size_t k = 0; k < belief.num_cells(); ++k) {
    if (belief.mass(k) == 0.0) continue;
    dist[FollowerBestResponse(game, leader_action, belief.Representative(k))] +=
        belief.mass(k);
  }
  return dist;
}

// F(b) = sum over leader actions of the expected leader reward.
inline double TotalExpectedReward(const AltruismGame& game,
                                  const IntervalBelief& belief) {
  internal::RequireRefines(belief, game);
  return internal::SumExpectedRewards(game, belief);
}

// Expected entropy reduction from observing the reply to row
// `leader_action`.
inline double InfoGainBonus(const AltruismGame& game,
                            const IntervalBelief& belief, int leader_action) {
  internal::RequireRefines(belief, game);
  game.CheckCell(leader_action, 0);
  double expected_posterior = 0.0;
  for (const auto& o : internal::Outcomes(game, belief, leader_action)) {
    expected_posterior += o.probability * Entropy(o.belief);
  }
  return std::max(0.0, Entropy(belief) - expected_posterior);
}

// Expected |F(b') - F(b)| over the predicted replies to row
// `leader_action`; with `positive_part` only increases count.
inline double ExpectedRewardGainBonus(const AltruismGame& game,
                                      const IntervalBelief& belief,
                                      int leader_action,
                                      bool positive_part = false) {
  internal::RequireRefines(belief, game);
  game.CheckCell(leader_action, 0);
  const double before = internal::SumExpectedRewards(game, belief);
  double bonus = 0.0;
  for (const auto& o : internal::Outcomes(game, belief, leader_action)) {
    const double delta = internal::SumExpectedRewards(game, o.belief) - before;
    bonus += o.probability * (positive_part ? std::max(0.0, delta)
                                            : std::fabs(delta));
  }
  return bonus;
}

// Whether the follower, believing itself the leader, would pick a different
// column than the reply the leader's equilibrium expects.
inline bool InConflict(const AltruismGame& game, double alpha) {
  const Equilibrium eq = StackelbergEquilibrium(game, alpha);
  return LeaderPreferenceOfFollower(game, alpha) != eq.follower_action;
}

// The set of alpha in [0,1] where role disagreement changes the outcome,
// as disjoint intervals in ascending order.
inline std::vector<AlphaInterval> ConflictRegion(const AltruismGame& game) {
  // Every change point of either role assignment is a crossing of two of
  // the follower's reward lines.
  std::vector<Breakpoint> crossings;
  const auto& r = game.rewards();
  std::vector<RewardPair> cells;
  for (const auto& row : r) cells.insert(cells.end(), row.begin(), row.end());
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      if (auto p = internal::Crossing(cells[a].follower, cells[a].leader,
                                      cells[b].follower, cells[b].leader)) {
        crossings.push_back(*p);
      }
    }
  }
  std::vector<double> pts{0.0};
  for (const auto& c : internal::SortedUnique(std::move(crossings))) {
    pts.push_back(c.value);
  }
  pts.push_back(1.0);

  // Walk the closed points and open gaps [p0], (p0,p1), [p1], ... and merge
  // adjacent pieces that are in conflict.
  std::vector<AlphaInterval> region;
  auto touches = [&](double at) {
    return !region.empty() && region.back().hi == at;
  };
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (InConflict(game, pts[k])) {
      if (touches(pts[k])) {
        region.back().hi_closed = true;
      } else {
        region.push_back({pts[k], pts[k], true, true});
      }
    }
    if (k + 1 < pts.size() && InConflict(game, 0.5 * (pts[k] + pts[k + 1]))) {
      if (touches(pts[k]) && region.back().hi_closed) {
        region.back().hi = pts[k + 1];
        region.back().hi_closed = false;
      } else {
        region.push_back({pts[k], pts[k + 1], false, false});
      }
    }
  }
  return region;
}

// Belief probability of the set of intervals.
inline double MassIn(const IntervalBelief& belief,
                     const std::vector<AlphaInterval>& region) {
  if (belief.is_point_mass()) {
    for (const auto& iv : region) {
      if (iv.Contains(*belief.atom())) return 1.0;
    }
    return 0.0;
  }
  double total = 0.0;
  for (const auto& iv : region) {
    total += MassBelow(belief, iv.hi) - MassBelow(belief, iv.lo);
  }
  return std::clamp(total, 0.0, 1.0);
}

// Leader reward in cell (i,j) hedged against the follower acting as if it
// led: (1-p) R_R(A_i,B_j) + p R_R(A_i,B_j'(alpha)).
inline double ConflictAdjustedReward(const AltruismGame& game,
                                     const IntervalBelief& belief, Cell cell,
                                     double alpha) {
  internal::RequireUnitInterval(alpha, "alpha");
  game.CheckCell(cell.leader_action, cell.follower_action);
  const double p = MassIn(belief, ConflictRegion(game));
  const int swapped = LeaderPreferenceOfFollower(game, alpha);
  const double a_leader = game.alpha_leader();
  return (1.0 - p) * AltruisticReward(game, cell, Player::kLeader, a_leader) +
         p * AltruisticReward(game, {cell.leader_action, swapped},
                              Player::kLeader, a_leader);
}

// Belief expectation of the conflict-adjusted reward of row
// `leader_action`, with the follower's rational reply in each cell.
inline double ConflictAdjustedExpectedReward(const AltruismGame& game,
                                             const IntervalBelief& belief,
                                             int leader_action) {
  internal::RequireRefines(belief, game);
  game.CheckCell(leader_action, 0);
  const auto region = ConflictRegion(game);
  std::vector<double> ends;
  for (const auto& iv : region) {
    ends.push_back(iv.lo);
    ends.push_back(iv.hi);
  }
  internal::Require(
      belief.partition().Refines(Partition::FromInterior(ends)),
      "belief partition does not refine the conflict region");
  const double p = MassIn(belief, region);
  const double a_leader = game.alpha_leader();
  double total = 0.0;
  for (std::size_t k = 0; k < belief.num_cells(); ++k) {
    if (belief.mass(k) == 0.0) continue;
    const double alpha = belief.Representative(k);
    const int reply = FollowerBestResponse(game, leader_action, alpha);
    const int swapped = LeaderPreferenceOfFollower(game, alpha);
    const double value =
        (1.0 - p) * AltruisticReward(game, {leader_action, reply},
                                     Player::kLeader, a_leader) +
        p * AltruisticReward(game, {leader_action, swapped}, Player::kLeader,
                             a_leader);
    total += belief.mass(k) * value;
  }
  return total;
}

// Scores every leader action as expected reward + lambda * bonus and picks
// the best, lowest index among ties.
inline Decision SelectAction(const AltruismGame& game,
                             const IntervalBelief& belief,
                             const ExplorationStrategy& strategy) {
  strategy.Validate();
  internal::RequireRefines(belief, game);
  Decision decision;
  for (int i = 0; i < game.num_leader_actions(); ++i) {
    ActionEvaluation e;
    e.action = i;
    e.expected_reward = strategy.conflict_aware
                            ? ConflictAdjustedExpectedReward(game, belief, i)
                            : ExpectedLeaderReward(game, belief, i);
    switch (strategy.kind) {
      case StrategyKind::kPassive:
        e.bonus = 0.0;
        break;
      case StrategyKind::kInfoGain:
        e.bonus = InfoGainBonus(game, belief, i);
        break;
      case StrategyKind::kExpectedRewardGain:
        e.bonus =
            ExpectedRewardGainBonus(game, belief, i, strategy.positive_part);
        break;
    }
    e.total = e.expected_reward + strategy.lambda * e.bonus;
    e.outcome_distribution = PredictedOutcomeDistribution(game, belief, i);
    decision.evaluations.push_back(std::move(e));
  }
  double best = decision.evaluations.front().total;
  for (const auto& e : decision.evaluations) best = std::max(best, e.total);
  const double slack = strategy.tie_tolerance * std::max(1.0, std::fabs(best));
  for (const auto& e : decision.evaluations) {
    if (e.total >= best - slack) {
      decision.chosen = e.action;
      break;
    }
  }
  return decision;
}

}  // namespace altruism

#endif  // ALTRUISM_EXPLORE_HPP_
