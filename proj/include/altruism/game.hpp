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

#ifndef ALTRUISM_GAME_HPP_
#define ALTRUISM_GAME_HPP_

// Bimatrix Stackelberg games in which each player's reward is blended with
// the other player's through an altruism coefficient.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altruism/errors.hpp"
#include "altruism/rational.hpp"

namespace altruism {

enum class Player { kLeader, kFollower };

struct RewardPair {
  double leader = 0.0;
  double follower = 0.0;
};

struct Cell {
  int leader_action = 0;
  int follower_action = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

class AltruismGame {
 public:
  AltruismGame(std::vector<std::string> leader_actions,
               std::vector<std::string> follower_actions,
               std::vector<std::vector<RewardPair>> rewards,
               double alpha_leader = 0.0)
      : leader_actions_(std::move(leader_actions)),
        follower_actions_(std::move(follower_actions)),
        rewards_(std::move(rewards)),
        alpha_leader_(alpha_leader) {
    internal::Require(!leader_actions_.empty() && !follower_actions_.empty(),
                      "game needs at least one action per player");
    internal::Require(rewards_.size() == leader_actions_.size(),
                      "reward matrix row count does not match leader actions");
    for (const auto& row : rewards_) {
      internal::Require(row.size() == follower_actions_.size(),
                        "reward matrix column count does not match follower "
                        "actions");
      for (const auto& pair : row) {
        internal::Require(std::isfinite(pair.leader) &&
                              std::isfinite(pair.follower),
                          "rewards must be finite");
      }
    }
    internal::RequireUnitInterval(alpha_leader_, "alpha_leader");
  }

  int num_leader_actions() const {
    return static_cast<int>(leader_actions_.size());
  }
  int num_follower_actions() const {
    return static_cast<int>(follower_actions_.size());
  }
  const std::string& leader_action(int i) const { return leader_actions_.at(i); }
  const std::string& follower_action(int j) const {
    return follower_actions_.at(j);
  }
  const std::vector<std::string>& leader_actions() const {
    return leader_actions_;
  }
  const std::vector<std::string>& follower_actions() const {
    return follower_actions_;
  }
  double alpha_leader() const { return alpha_leader_; }
  const std::vector<std::vector<RewardPair>>& rewards() const {
    return rewards_;
  }

  const RewardPair& reward(int i, int j) const {
    CheckCell(i, j);
    return rewards_[i][j];
  }

  void CheckCell(int i, int j) const {
    if (i < 0 || i >= num_leader_actions() || j < 0 ||
        j >= num_follower_actions()) {
      throw InputError("cell (" + std::to_string(i) + "," + std::to_string(j) +
                       ") outside the reward matrix");
    }
  }

  // The same interaction with the players' roles exchanged: the follower
  // commits first with coefficient `alpha_new_leader`.
  AltruismGame RolesSwapped(double alpha_new_leader) const {
    std::vector<std::vector<RewardPair>> swapped(
        follower_actions_.size(),
        std::vector<RewardPair>(leader_actions_.size()));
    for (std::size_t i = 0; i < leader_actions_.size(); ++i) {
      for (std::size_t j = 0; j < follower_actions_.size(); ++j) {
        swapped[j][i] = {rewards_[i][j].follower, rewards_[i][j].leader};
      }
    }
    return AltruismGame(follower_actions_, leader_actions_, std::move(swapped),
                        alpha_new_leader);
  }

  // Index of an action label, or -1.
  int FindLeaderAction(const std::string& label) const {
    return IndexOf(leader_actions_, label);
  }
  int FindFollowerAction(const std::string& label) const {
    return IndexOf(follower_actions_, label);
  }

 private:
  static int IndexOf(const std::vector<std::string>& labels,
                     const std::string& label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
  }

  std::vector<std::string> leader_actions_;
  std::vector<std::string> follower_actions_;
  std::vector<std::vector<RewardPair>> rewards_;
  double alpha_leader_ = 0.0;
};

struct Equilibrium {
  int leader_action = 0;
  int follower_action = 0;
  double leader_reward = 0.0;
  double follower_reward = 0.0;
};

// A value of alpha in (0,1) at which two reward lines cross. `exact` is set
// whenever every reward involved is a small-denominator rational.
struct Breakpoint {
  double value = 0.0;
  std::optional<Rational> exact;
};

namespace internal {

// Ties between rewards are resolved with a tolerance relative to their
// magnitude, so rescaled matrices keep their tie structure.
inline bool NearlyEqual(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-12 * scale;
}

inline double Blend(double own, double other, double alpha) {
  return (1.0 - alpha) * own + alpha * other;
}

// Crossing of the lines own_a + alpha*(other_a - own_a) and
// own_b + alpha*(other_b - own_b) strictly inside (0,1).
inline std::optional<Breakpoint> Crossing(double own_a, double other_a,
                                          double own_b, double other_b) {
  const double slope_a = other_a - own_a;
  const double slope_b = other_b - own_b;
  if (slope_a == slope_b) return std::nullopt;
  const auto qa = Rational::FromDouble(own_a);
  const auto qb = Rational::FromDouble(own_b);
  const auto qoa = Rational::FromDouble(other_a);
  const auto qob = Rational::FromDouble(other_b);
  if (qa && qb && qoa && qob) {
    const Rational s_a = *qoa - *qa;
    const Rational s_b = *qob - *qb;
    if (s_a == s_b) return std::nullopt;
    const Rational root = (*qb - *qa) / (s_a - s_b);
    if (!(Rational(0) < root) || !(root < Rational(1))) return std::nullopt;
    return Breakpoint{root.ToDouble(), root};
  }
  const double root = (own_b - own_a) / (slope_a - slope_b);
  if (!(root > 0.0 && root < 1.0)) return std::nullopt;
  return Breakpoint{root, std::nullopt};
}

// Sorts and removes duplicates (exactly equal fractions, or doubles within
// 1e-9), keeping an exact representative where one exists.
inline std::vector<Breakpoint> SortedUnique(std::vector<Breakpoint> points) {
  std::sort(points.begin(), points.end(),
            [](const Breakpoint& a, const Breakpoint& b) {
              return a.value < b.value;
            });
  std::vector<Breakpoint> out;
  for (auto& p : points) {
    if (!out.empty()) {
      Breakpoint& last = out.back();
      const bool same = (last.exact && p.exact)
                            ? *last.exact == *p.exact
                            : std::fabs(last.value - p.value) <= 1e-9;
      if (same) {
        if (!last.exact && p.exact) last = p;
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace internal

// Reward of `player` in `cell` reweighted by that player's altruism.
inline double AltruisticReward(const AltruismGame& game, Cell cell,
                               Player player, double alpha) {
  internal::RequireUnitInterval(alpha, "alpha");
  const RewardPair& r = game.reward(cell.leader_action, cell.follower_action);
  return player == Player::kLeader ? internal::Blend(r.leader, r.follower, alpha)
                                   : internal::Blend(r.follower, r.leader, alpha);
}

// Follower's best reply to leader action `leader_action` given its altruism
// `alpha`. Ties go to the column that pays the leader most, then to the
// lowest column index.
inline int FollowerBestResponse(const AltruismGame& game, int leader_action,
                                double alpha) {
  internal::RequireUnitInterval(alpha, "alpha");
  game.CheckCell(leader_action, 0);
  int best = 0;
  double best_follower = 0.0;
  double best_leader = 0.0;
  for (int j = 0; j < game.num_follower_actions(); ++j) {
    const RewardPair& r = game.reward(leader_action, j);
    const double follower = internal::Blend(r.follower, r.leader, alpha);
    const double leader =
        internal::Blend(r.leader, r.follower, game.alpha_leader());
    if (j == 0) {
      best_follower = follower;
      best_leader = leader;
      continue;
    }
    if (internal::NearlyEqual(follower, best_follower)) {
      if (leader > best_leader && !internal::NearlyEqual(leader, best_leader)) {
        best = j;
        best_follower = follower;
        best_leader = leader;
      }
    } else if (follower > best_follower) {
      best = j;
      best_follower = follower;
      best_leader = leader;
    }
  }
  return best;
}

// R_R(A_i, alpha): the leader's (altruistic) reward for committing to row i
// when the follower, with coefficient alpha, replies rationally.
inline double LeaderRewardGivenAlpha(const AltruismGame& game,
                                     int leader_action, double alpha) {
  const int j = FollowerBestResponse(game, leader_action, alpha);
  return AltruisticReward(game, {leader_action, j}, Player::kLeader,
                          game.alpha_leader());
}

inline Equilibrium StackelbergEquilibrium(const AltruismGame& game,
                                          double alpha_follower) {
  internal::RequireUnitInterval(alpha_follower, "alpha_follower");
  int best_i = 0;
  double best_value = 0.0;
  for (int i = 0; i < game.num_leader_actions(); ++i) {
    const double value = LeaderRewardGivenAlpha(game, i, alpha_follower);
    if (i == 0 || (value > best_value &&
                   !internal::NearlyEqual(value, best_value))) {
      best_i = i;
      best_value = value;
    }
  }
  const int best_j = FollowerBestResponse(game, best_i, alpha_follower);
  const RewardPair& r = game.reward(best_i, best_j);
  return {best_i, best_j, r.leader, r.follower};
}

// Values of alpha in (0,1) where the follower's ranking of two columns of
// row `leader_action` flips, ascending and without duplicates.
inline std::vector<Breakpoint> IntersectionPoints(const AltruismGame& game,
                                                  int leader_action) {
  game.CheckCell(leader_action, 0);
  std::vector<Breakpoint> points;
  for (int j = 0; j < game.num_follower_actions(); ++j) {
    for (int k = j + 1; k < game.num_follower_actions(); ++k) {
      const RewardPair& a = game.reward(leader_action, j);
      const RewardPair& b = game.reward(leader_action, k);
      if (auto p = internal::Crossing(a.follower, a.leader, b.follower,
                                      b.leader)) {
        points.push_back(*p);
      }
    }
  }
  return internal::SortedUnique(std::move(points));
}

enum class OutcomeLabel { kAccidentResponsible, kGoalAchieved, kNeutral };

struct CellLabels {
  OutcomeLabel leader = OutcomeLabel::kNeutral;
  OutcomeLabel follower = OutcomeLabel::kNeutral;
};

inline double ResponsibilityReward(OutcomeLabel label) {
  switch (label) {
    case OutcomeLabel::kAccidentResponsible:
      return -1.0;
    case OutcomeLabel::kGoalAchieved:
      return 1.0;
    case OutcomeLabel::kNeutral:
      return 0.0;
  }
  return 0.0;
}

// Trinary reward matrix derived from accident responsibility and goal
// achievement labels.
inline std::vector<std::vector<RewardPair>> BuildResponsibilityMatrix(
    const std::vector<std::vector<CellLabels>>& labels) {
  internal::Require(!labels.empty() && !labels.front().empty(),
                    "label grid must be non-empty");
  std::vector<std::vector<RewardPair>> rewards;
  rewards.reserve(labels.size());
  for (const auto& row : labels) {
    internal::Require(row.size() == labels.front().size(),
                      "label grid rows must have equal length");
    auto& out = rewards.emplace_back();
    for (const auto& cell : row) {
      out.push_back({ResponsibilityReward(cell.leader),
                     ResponsibilityReward(cell.follower)});
    }
  }
  return rewards;
}

// The column the follower would commit to if it believed itself the leader,
// with the original leader replying under its own coefficient.
inline int LeaderPreferenceOfFollower(const AltruismGame& game,
                                      double alpha_follower) {
  internal::RequireUnitInterval(alpha_follower, "alpha_follower");
  const AltruismGame swapped = game.RolesSwapped(alpha_follower);
  return StackelbergEquilibrium(swapped, game.alpha_leader()).leader_action;
}

}  // namespace altruism

#endif  // ALTRUISM_GAME_HPP_
