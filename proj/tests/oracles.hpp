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

#ifndef ALTRUISM_TESTS_ORACLES_HPP_
#define ALTRUISM_TESTS_ORACLES_HPP_

// Reference implementations that share no code with the library, plus
// random instance generators for the property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "altruism/game.hpp"

namespace altruism::testing {

// Integer bimatrix; alphas are k/100 so all comparisons are exact.
struct IntGame {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<int>> leader;
  std::vector<std::vector<int>> follower;

  AltruismGame ToGame(double alpha_leader = 0.0) const {
    std::vector<std::string> a, b;
    for (int i = 0; i < rows; ++i) a.push_back("A" + std::to_string(i));
    for (int j = 0; j < cols; ++j) b.push_back("B" + std::to_string(j));
    std::vector<std::vector<RewardPair>> r(rows, std::vector<RewardPair>(cols));
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        r[i][j] = {static_cast<double>(leader[i][j]),
                   static_cast<double>(follower[i][j])};
      }
    }
    return AltruismGame(a, b, r, alpha_leader);
  }
};

inline IntGame RandomIntGame(std::mt19937_64& rng, int max_rows, int max_cols,
                             int lo, int hi) {
  std::uniform_int_distribution<int> nr(1, max_rows), nc(1, max_cols),
      val(lo, hi);
  IntGame g;
  g.rows = nr(rng);
  g.cols = nc(rng);
  g.leader.assign(g.rows, std::vector<int>(g.cols));
  g.follower.assign(g.rows, std::vector<int>(g.cols));
  for (int i = 0; i < g.rows; ++i) {
    for (int j = 0; j < g.cols; ++j) {
      g.leader[i][j] = val(rng);
      g.follower[i][j] = val(rng);
    }
  }
  return g;
}

struct OracleEquilibrium {
  int leader_action = -1;
  int follower_action = -1;
};

// Enumerates every cell. The follower's candidates in a row are the columns
// maximising its blended reward; among those it favours the largest leader
// reward, then the lowest column. The leader then takes the row with the
// largest blended reward, lowest row first. Values are scaled by 100.
inline OracleEquilibrium BruteForceEquilibrium(const IntGame& g, int alpha_pct,
                                               int alpha_leader_pct = 0) {
  auto follower_value = [&](int i, int j) {
    return (100 - alpha_pct) * g.follower[i][j] + alpha_pct * g.leader[i][j];
  };
  auto leader_value = [&](int i, int j) {
    return (100 - alpha_leader_pct) * g.leader[i][j] +
           alpha_leader_pct * g.follower[i][j];
  };
  OracleEquilibrium best;
  long best_value = 0;
  for (int i = 0; i < g.rows; ++i) {
    int top = follower_value(i, 0);
    for (int j = 1; j < g.cols; ++j) top = std::max(top, follower_value(i, j));
    int reply = -1;
    for (int j = 0; j < g.cols; ++j) {
      if (follower_value(i, j) != top) continue;
      if (reply < 0 || leader_value(i, j) > leader_value(i, reply)) reply = j;
    }
    const long value = leader_value(i, reply);
    if (best.leader_action < 0 || value > best_value) {
      best = {i, reply};
      best_value = value;
    }
  }
  return best;
}

struct GridBonuses {
  double info_gain = 0.0;
  double reward_gain = 0.0;
};

// Bonuses for row `action` under U(lo, hi), estimated on `samples` evenly
// spaced alphas. Conditioned beliefs are uniform on the sample subsets, so
// their entropy is the log of the subset's measure.
inline GridBonuses GridBonusOracle(const AltruismGame& game, int action,
                                   double lo, double hi, int samples = 10000) {
  const int m = game.num_leader_actions();
  const int n = game.num_follower_actions();
  auto reply = [&](int i, double alpha) {
    int best = 0;
    for (int j = 1; j < n; ++j) {
      const auto& c = game.reward(i, j);
      const auto& b = game.reward(i, best);
      const double vc = (1 - alpha) * c.follower + alpha * c.leader;
      const double vb = (1 - alpha) * b.follower + alpha * b.leader;
      if (vc > vb + 1e-12 || (std::fabs(vc - vb) <= 1e-12 && c.leader > b.leader))
        best = j;
    }
    return best;
  };
  std::vector<int> count(n, 0);
  std::vector<double> f_given(n, 0.0);
  double f_all = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double alpha = lo + (hi - lo) * (s + 0.5) / samples;
    double f = 0.0;
    for (int a = 0; a < m; ++a) f += game.reward(a, reply(a, alpha)).leader;
    const int j = reply(action, alpha);
    ++count[j];
    f_given[j] += f;
    f_all += f;
  }
  f_all /= samples;
  GridBonuses out;
  const double width = hi - lo;
  double expected_h = 0.0;
  for (int j = 0; j < n; ++j) {
    if (count[j] == 0) continue;
    const double p = static_cast<double>(count[j]) / samples;
    expected_h += p * std::log(p * width);
    out.reward_gain += p * std::fabs(f_given[j] / count[j] - f_all);
  }
  out.info_gain = std::log(width) - expected_h;
  return out;
}

}  // namespace altruism::testing

#endif  // ALTRUISM_TESTS_ORACLES_HPP_
