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

#include "altruism/scenario_io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "paper_games.hpp"

namespace altruism {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Reference() {
  return ReadFile(std::string(ALTRUISM_SOURCE_DIR) +
                  "/scenarios/lane_merge_conflict_free.yaml");
}

// Replaces the first occurrence of `from`.
std::string Patched(const std::string& from, const std::string& to) {
  std::string text = Reference();
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

int LineOf(const std::string& text, const std::string& needle) {
  const auto pos = text.find(needle);
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

// Expects a ScenarioError on the given line mentioning `fragment`.
void ExpectError(const std::string& text, int line,
                 const std::string& fragment) {
  try {
    ParseScenarioString(text);
    ADD_FAILURE() << "no error for: " << fragment;
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos)
        << e.what();
    EXPECT_EQ(std::string(e.what()).rfind("line " + std::to_string(line), 0),
              0u)
        << e.what();
  }
}

TEST(ScenarioIoTest, ReferenceScenariosLoad) {
  const Scenario free = ParseScenarioString(Reference());
  EXPECT_EQ(free.name, "lane-merge-conflict-free");
  const AltruismGame expected = testing::LaneMergeConflictFree();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(free.game.reward(i, j).leader, expected.reward(i, j).leader);
      EXPECT_EQ(free.game.reward(i, j).follower,
                expected.reward(i, j).follower);
    }
  }
  EXPECT_EQ(free.strategy.kind, StrategyKind::kExpectedRewardGain);
  EXPECT_EQ(free.episode_steps, 30);
  EXPECT_EQ(free.horizon, 6);
  EXPECT_DOUBLE_EQ(free.dt, 0.2);
  EXPECT_NO_THROW(free.Validate());

  const Scenario resp = LoadScenario(std::string(ALTRUISM_SOURCE_DIR) +
                                     "/scenarios/lane_merge_responsibility.yaml");
  const AltruismGame fig = testing::LaneMergeResponsibility();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(resp.game.reward(i, j).leader, fig.reward(i, j).leader);
      EXPECT_EQ(resp.game.reward(i, j).follower, fig.reward(i, j).follower);
    }
  }
}

TEST(ScenarioIoTest, ErrorsCarryLineNumbers) {
  {
    const std::string t = Patched("true_alpha: 0.9", "true_alpha: 1.5");
    ExpectError(t, LineOf(t, "true_alpha"), "true_alpha");
  }
  {
    const std::string t = Patched("true_alpha: 0.9", "true_alpha: lots");
    ExpectError(t, LineOf(t, "true_alpha"), "wrong type");
  }
  {
    const std::string t = Patched("episode:", "episodes:");
    ExpectError(t, LineOf(t, "episodes:"), "unknown key 'episodes'");
  }
  {
    const std::string t = Patched("kind: reward-gain", "kind: greedy");
    ExpectError(t, LineOf(t, "greedy"), "unknown strategy");
  }
  {
    const std::string t = Patched("lambda_x: 0.05", "lambda_x: [1]");
    ExpectError(t, LineOf(t, "lambda_x"), "lambda_x");
  }
  {
    const std::string t = Patched("follower_role: follows", "follower_role: x");
    ExpectError(t, LineOf(t, "follower_role"), "follower_role");
  }
  {
    const std::string t = Patched("steps: 30", "steps: 0");
    ExpectError(t, LineOf(t, "steps: 0"), "episode.steps");
  }
}

TEST(ScenarioIoTest, WeightTableErrors) {
  const std::string text = Reference();
  const auto start = text.find("    Ahead:", text.find("  E:"));
  const auto end = text.find('\n', start);
  std::string t = text;
  t.erase(start, end - start + 1);
  ExpectError(t, LineOf(t, "weights:") + 1, "weights missing cell (E, Ahead)");

  const std::string short_w =
      Patched("[0, -2, -1, -2, 3, 0]", "[0, -2, -1, -2, 3]");
  ExpectError(short_w, LineOf(short_w, "[0, -2, -1, -2, 3]"), "list of 6");

  const std::string bad_action = Patched("  E:", "  F:");
  ExpectError(bad_action, LineOf(bad_action, "  F:"), "unknown leader action");
}

TEST(ScenarioIoTest, LabelsAndRewardsAreExclusive) {
  const std::string resp =
      ReadFile(std::string(ALTRUISM_SOURCE_DIR) +
               "/scenarios/lane_merge_responsibility.yaml");
  std::string bad = resp;
  bad.replace(bad.find("[goal, neutral]"), 15, "[goal, happy]");
  ExpectError(bad, LineOf(bad, "happy"), "unknown label 'happy'");

  std::string both = resp;
  const auto at = both.find("  labels:");
  both.insert(at, "  rewards: [[[1, 0], [0, 1]]]\n");
  ExpectError(both, LineOf(both, "leader_actions"), "exactly one of");
}

TEST(ScenarioIoTest, SyntaxErrorsReportTheLine) {
  try {
    ParseScenarioString("name: x\ngame: [unclosed\n");
    ADD_FAILURE();
  } catch (const ScenarioError& e) {
    EXPECT_GT(e.line(), 0);
  }
}

TEST(ScenarioIoTest, MissingFile) {
  EXPECT_THROW(LoadScenario("/nonexistent/scenario.yaml"), InputError);
}

}  // namespace
}  // namespace altruism
