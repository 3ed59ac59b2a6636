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

#include "altruism/game.hpp"

#include <gtest/gtest.h>

#include <random>

#include "altruism/rational.hpp"
#include "oracles.hpp"
#include "paper_games.hpp"

namespace altruism {
namespace {

using testing::InformationGathering;
using testing::InformationSufficiency;
using testing::LaneMergeConflictFree;
using testing::LaneMergeResponsibility;

constexpr int kA = 0, kB = 1, kE = 2;
constexpr int kBehind = 0, kAhead = 1;

std::vector<Rational> ExactPoints(const AltruismGame& game, int i) {
  std::vector<Rational> out;
  for (const Breakpoint& p : IntersectionPoints(game, i)) {
    EXPECT_TRUE(p.exact.has_value());
    if (p.exact) out.push_back(*p.exact);
  }
  return out;
}

TEST(AltruisticRewardTest, EndpointsGiveOwnAndOtherReward) {
  const AltruismGame g = InformationGathering();
  EXPECT_DOUBLE_EQ(AltruisticReward(g, {1, 0}, Player::kFollower, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(AltruisticReward(g, {1, 0}, Player::kFollower, 1.0), -1.0);
}

TEST(AltruisticRewardTest, SubstitutesAtBreakpoint) {
  const AltruismGame g = LaneMergeConflictFree();
  // (1 - a)(-2) + 3a = 5a - 2, which equals the Ahead value 3 - 13a here.
  const double a = 5.0 / 18;
  EXPECT_NEAR(AltruisticReward(g, {kA, kBehind}, Player::kFollower, a),
              5 * a - 2, 1e-15);
  EXPECT_NEAR(AltruisticReward(g, {kA, kBehind}, Player::kFollower, a),
              -11.0 / 18, 1e-15);
  EXPECT_NEAR(AltruisticReward(g, {kA, kAhead}, Player::kFollower, a),
              -11.0 / 18, 1e-15);
}

TEST(AltruisticRewardTest, RejectsBadInputs) {
  const AltruismGame g = InformationGathering();
  EXPECT_THROW(AltruisticReward(g, {0, 0}, Player::kLeader, 1.5), InputError);
  EXPECT_THROW(AltruisticReward(g, {0, 0}, Player::kLeader, -0.1), InputError);
  EXPECT_THROW(AltruisticReward(g, {3, 0}, Player::kLeader, 0.5), InputError);
  EXPECT_THROW(AltruisticReward(g, {0, 2}, Player::kLeader, 0.5), InputError);
}

TEST(AltruismGameTest, RejectsMalformedMatrices) {
  EXPECT_THROW(AltruismGame({}, {"B"}, {}), InputError);
  EXPECT_THROW(AltruismGame({"A"}, {"B"}, {{{0, 0}, {1, 1}}}), InputError);
  EXPECT_THROW(AltruismGame({"A"}, {"B"}, {{{0, 0}}}, 1.2), InputError);
}

TEST(FollowerBestResponseTest, LaneMergeRowAFlipsAtFiveEighteenths) {
  const AltruismGame g = LaneMergeConflictFree();
  EXPECT_EQ(FollowerBestResponse(g, kA, 0.9), kBehind);
  EXPECT_EQ(FollowerBestResponse(g, kA, 0.2), kAhead);
}

TEST(FollowerBestResponseTest, TiesFavourTheLeader) {
  const AltruismGame g({"A"}, {"B1", "B2"}, {{{1, 4}, {3, 4}}});
  EXPECT_EQ(FollowerBestResponse(g, 0, 0.0), 1);
  const AltruismGame flat({"A"}, {"B1", "B2"}, {{{2, 4}, {2, 4}}});
  EXPECT_EQ(FollowerBestResponse(flat, 0, 0.3), 0);
}

TEST(StackelbergEquilibriumTest, LaneMerge) {
  const AltruismGame g = LaneMergeConflictFree();
  const Equilibrium high = StackelbergEquilibrium(g, 0.9);
  EXPECT_EQ(high.leader_action, kA);
  EXPECT_EQ(high.follower_action, kBehind);
  EXPECT_EQ(high.leader_reward, 3.0);
  const Equilibrium low = StackelbergEquilibrium(g, 0.2);
  EXPECT_EQ(low.leader_action, kB);
  EXPECT_EQ(low.follower_action, kAhead);
  EXPECT_EQ(low.leader_reward, 1.0);
}

TEST(StackelbergEquilibriumTest, SingleCell) {
  const AltruismGame g({"A"}, {"B"}, {{{-4, 9}}});
  const Equilibrium eq = StackelbergEquilibrium(g, 0.5);
  EXPECT_EQ(eq.leader_action, 0);
  EXPECT_EQ(eq.follower_action, 0);
  EXPECT_EQ(eq.leader_reward, -4.0);
  EXPECT_EQ(eq.follower_reward, 9.0);
}

TEST(LeaderRewardGivenAlphaTest, PaperValues) {
  const AltruismGame gathering = InformationGathering();
  EXPECT_EQ(LeaderRewardGivenAlpha(gathering, 0, 0.6), 3.0);
  for (double a : {0.0, 0.25, 0.5, 1.0}) {
    EXPECT_EQ(LeaderRewardGivenAlpha(gathering, 2, a), 2.0);
  }
  EXPECT_EQ(LeaderRewardGivenAlpha(InformationSufficiency(), 1, 0.9), 1.0);
}

TEST(IntersectionPointsTest, ExactFractions) {
  const AltruismGame gathering = InformationGathering();
  EXPECT_EQ(ExactPoints(gathering, 0), std::vector{Rational(7, 15)});
  EXPECT_EQ(ExactPoints(gathering, 1), std::vector{Rational(1, 3)});
  EXPECT_TRUE(ExactPoints(gathering, 2).empty());

  const AltruismGame sufficiency = InformationSufficiency();
  EXPECT_EQ(ExactPoints(sufficiency, 0), std::vector{Rational(5, 12)});
  EXPECT_EQ(ExactPoints(sufficiency, 1), std::vector{Rational(5, 6)});

  const AltruismGame merge = LaneMergeConflictFree();
  EXPECT_EQ(ExactPoints(merge, kA), std::vector{Rational(5, 18)});
  EXPECT_TRUE(ExactPoints(merge, kB).empty());
  EXPECT_EQ(ExactPoints(merge, kE), std::vector{Rational(1, 2)});
}

TEST(IntersectionPointsTest, ParallelLinesContributeNothing) {
  const AltruismGame g({"A"}, {"B1", "B2", "B3"},
                       {{{1, 2}, {1, 2}, {4, 5}}});
  EXPECT_TRUE(IntersectionPoints(g, 0).empty());
}

TEST(IntersectionPointsTest, NonRationalInputsFallBackToFloatingPoint) {
  const AltruismGame g({"A"}, {"B1", "B2"},
                       {{{0.0, std::sqrt(2.0) - 1.0}, {1.0, 0.0}}});
  const auto pts = IntersectionPoints(g, 0);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_FALSE(pts[0].exact.has_value());
  EXPECT_EQ(FollowerBestResponse(g, 0, pts[0].value - 1e-6),
            1 - FollowerBestResponse(g, 0, pts[0].value + 1e-6));
}

TEST(ResponsibilityMatrixTest, LaneMergeLabels) {
  using L = OutcomeLabel;
  const auto rewards = BuildResponsibilityMatrix(
      {{{L::kGoalAchieved, L::kNeutral},
        {L::kAccidentResponsible, L::kAccidentResponsible}},
       {{L::kAccidentResponsible, L::kAccidentResponsible},
        {L::kNeutral, L::kGoalAchieved}},
       {{L::kGoalAchieved, L::kNeutral}, {L::kNeutral, L::kGoalAchieved}}});
  const AltruismGame expected = LaneMergeResponsibility();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(rewards[i][j].leader, expected.reward(i, j).leader);
      EXPECT_EQ(rewards[i][j].follower, expected.reward(i, j).follower);
    }
  }
}

TEST(ResponsibilityMatrixTest, NeutralAndSingleCell) {
  using L = OutcomeLabel;
  const auto zero = BuildResponsibilityMatrix(
      {{{L::kNeutral, L::kNeutral}, {L::kNeutral, L::kNeutral}}});
  for (const auto& cell : zero[0]) {
    EXPECT_EQ(cell.leader, 0.0);
    EXPECT_EQ(cell.follower, 0.0);
  }
  const auto one =
      BuildResponsibilityMatrix({{{L::kGoalAchieved, L::kAccidentResponsible}}});
  EXPECT_EQ(one[0][0].leader, 1.0);
  EXPECT_EQ(one[0][0].follower, -1.0);
}

TEST(LeaderPreferenceOfFollowerTest, LaneMerge) {
  const AltruismGame g = LaneMergeResponsibility();
  EXPECT_EQ(LeaderPreferenceOfFollower(g, 0.2), kAhead);
  EXPECT_EQ(LeaderPreferenceOfFollower(g, 0.9), kBehind);
  const AltruismGame column({"A", "B"}, {"Only"}, {{{1, 2}}, {{3, 0}}});
  EXPECT_EQ(LeaderPreferenceOfFollower(column, 0.4), 0);
}

TEST(GamePropertyTest, AffineInAlpha) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const AltruismGame g = testing::RandomIntGame(rng, 4, 4, -10, 10).ToGame();
    const Cell c{0, 0};
    const double a = unit(rng), b = unit(rng), t = unit(rng);
    for (Player p : {Player::kLeader, Player::kFollower}) {
      const double mixed = AltruisticReward(g, c, p, t * a + (1 - t) * b);
      const double blend = t * AltruisticReward(g, c, p, a) +
                           (1 - t) * AltruisticReward(g, c, p, b);
      EXPECT_NEAR(mixed, blend, 1e-12);
    }
    EXPECT_EQ(AltruisticReward(g, c, Player::kLeader, 0.0), g.reward(0, 0).leader);
    EXPECT_EQ(AltruisticReward(g, c, Player::kLeader, 1.0),
              g.reward(0, 0).follower);
  }
}

TEST(GamePropertyTest, EquilibriumMatchesBruteForceOracle) {
  std::mt19937_64 rng(20260101);
  int compared = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const testing::IntGame ig = testing::RandomIntGame(rng, 4, 4, -10, 10);
    const AltruismGame g = ig.ToGame();
    for (int pct = 0; pct <= 100; ++pct) {
      const auto oracle = testing::BruteForceEquilibrium(ig, pct);
      const Equilibrium eq = StackelbergEquilibrium(g, pct / 100.0);
      ASSERT_EQ(eq.leader_action, oracle.leader_action)
          << "trial " << trial << " alpha " << pct;
      ASSERT_EQ(eq.follower_action, oracle.follower_action)
          << "trial " << trial << " alpha " << pct;
      ++compared;
    }
  }
  EXPECT_EQ(compared, 10000 * 101);
}

TEST(GamePropertyTest, EquilibriumMatchesOracleWithAltruisticLeader) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pct_dist(0, 100);
  for (int trial = 0; trial < 2000; ++trial) {
    const testing::IntGame ig = testing::RandomIntGame(rng, 4, 4, -10, 10);
    const int leader_pct = pct_dist(rng);
    const AltruismGame g = ig.ToGame(leader_pct / 100.0);
    for (int pct = 0; pct <= 100; pct += 5) {
      const auto oracle = testing::BruteForceEquilibrium(ig, pct, leader_pct);
      const Equilibrium eq = StackelbergEquilibrium(g, pct / 100.0);
      ASSERT_EQ(eq.leader_action, oracle.leader_action);
      ASSERT_EQ(eq.follower_action, oracle.follower_action);
    }
  }
}

TEST(GamePropertyTest, ChangePointsAreIntersectionPoints) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const AltruismGame g = testing::RandomIntGame(rng, 3, 4, -10, 10).ToGame();
    for (int i = 0; i < g.num_leader_actions(); ++i) {
      const auto points = IntersectionPoints(g, i);
      std::vector<double> cuts{0.0};
      for (const auto& p : points) cuts.push_back(p.value);
      cuts.push_back(1.0);
      // Constant strictly inside every gap between consecutive points.
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k], hi = cuts[k + 1];
        const int reply = FollowerBestResponse(g, i, 0.5 * (lo + hi));
        const double reward = LeaderRewardGivenAlpha(g, i, 0.5 * (lo + hi));
        for (int s = 1; s < 10; ++s) {
          const double a = lo + (hi - lo) * s / 10.0;
          EXPECT_EQ(FollowerBestResponse(g, i, a), reply);
          EXPECT_EQ(LeaderRewardGivenAlpha(g, i, a), reward);
        }
      }
    }
  }
}

TEST(GamePropertyTest, PositiveRescalingKeepsArgmaxes) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const testing::IntGame ig = testing::RandomIntGame(rng, 4, 4, -10, 10);
    const AltruismGame g = ig.ToGame();
    const double c = scale(rng);
    auto rewards = g.rewards();
    for (auto& row : rewards) {
      for (auto& cell : row) {
        cell.leader *= c;
        cell.follower *= c;
      }
    }
    const AltruismGame scaled(g.leader_actions(), g.follower_actions(),
                              rewards);
    for (int pct = 0; pct <= 100; pct += 10) {
      const Equilibrium a = StackelbergEquilibrium(g, pct / 100.0);
      const Equilibrium b = StackelbergEquilibrium(scaled, pct / 100.0);
      EXPECT_EQ(a.leader_action, b.leader_action);
      EXPECT_EQ(a.follower_action, b.follower_action);
    }
  }
}

}  // namespace
}  // namespace altruism
