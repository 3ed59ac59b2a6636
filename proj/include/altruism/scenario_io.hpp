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

#ifndef ALTRUISM_SCENARIO_IO_HPP_
#define ALTRUISM_SCENARIO_IO_HPP_

// Loads lane-merge scenarios from YAML. Every validation error carries the
// 1-based line of the offending node.

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "altruism/errors.hpp"
#include "altruism/sim.hpp"

namespace altruism {

class ScenarioError : public InputError {
 public:
  ScenarioError(int line, const std::string& message)
      : InputError(line > 0 ? "line " + std::to_string(line) + ": " + message
                            : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace scenario_internal {

inline int LineOf(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

[[noreturn]] inline void Fail(const YAML::Node& node,
                              const std::string& message) {
  throw ScenarioError(LineOf(node), message);
}

inline void CheckKeys(const YAML::Node& node, const std::string& where,
                      std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) Fail(node, where + " must be a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) Fail(kv.first, "unknown key '" + key + "' in " + where);
  }
}

inline YAML::Node Required(const YAML::Node& parent, const char* key,
                           const std::string& where) {
  const YAML::Node n = parent[key];
  if (!n) Fail(parent, "missing required key '" + std::string(key) + "' in " +
                           where);
  return n;
}

template <typename T>
T As(const YAML::Node& node, const std::string& what) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    Fail(node, what + " has the wrong type");
  }
}

template <typename T>
void Optional(const YAML::Node& parent, const char* key, T& out) {
  if (const YAML::Node n = parent[key]) out = As<T>(n, key);
}

inline WeightVector ParseWeights(const YAML::Node& node,
                                 const std::string& what) {
  if (!node.IsSequence() || node.size() != kNumFeatures) {
    Fail(node, what + " must be a list of " + std::to_string(kNumFeatures) +
                   " numbers");
  }
  WeightVector w{};
  for (int k = 0; k < kNumFeatures; ++k) w[k] = As<double>(node[k], what);
  return w;
}

inline VehicleState ParseState(const YAML::Node& node,
                               const std::string& where) {
  CheckKeys(node, where, {"x", "y", "v", "theta"});
  VehicleState s;
  s.x = As<double>(Required(node, "x", where), where + ".x");
  s.y = As<double>(Required(node, "y", where), where + ".y");
  s.v = As<double>(Required(node, "v", where), where + ".v");
  Optional(node, "theta", s.theta);
  if (s.v < 0.0) Fail(node["v"], where + ".v must be nonnegative");
  return s;
}

inline OutcomeLabel ParseLabel(const YAML::Node& node) {
  const std::string s = As<std::string>(node, "label");
  if (s == "responsible") return OutcomeLabel::kAccidentResponsible;
  if (s == "goal") return OutcomeLabel::kGoalAchieved;
  if (s == "neutral") return OutcomeLabel::kNeutral;
  Fail(node, "unknown label '" + s +
                 "' (expected responsible, goal or neutral)");
}

inline std::vector<std::string> ParseLabels(const YAML::Node& node,
                                            const std::string& what) {
  if (!node.IsSequence() || node.size() == 0) {
    Fail(node, what + " must be a non-empty list");
  }
  std::vector<std::string> out;
  for (const auto& n : node) out.push_back(As<std::string>(n, what));
  return out;
}

// Each cell is a two-element list [leader, follower].
template <typename T, typename F>
std::vector<std::vector<T>> ParseGrid(const YAML::Node& node,
                                      const std::string& what, std::size_t rows,
                                      std::size_t cols, F parse_cell) {
  if (!node.IsSequence() || node.size() != rows) {
    Fail(node, what + " must have " + std::to_string(rows) + " rows");
  }
  std::vector<std::vector<T>> grid;
  for (const auto& row : node) {
    if (!row.IsSequence() || row.size() != cols) {
      Fail(row, what + " rows must have " + std::to_string(cols) + " cells");
    }
    auto& out = grid.emplace_back();
    for (const auto& cell : row) {
      if (!cell.IsSequence() || cell.size() != 2) {
        Fail(cell, what + " cells must be [leader, follower] pairs");
      }
      out.push_back(parse_cell(cell));
    }
  }
  return grid;
}

inline AltruismGame ParseGame(const YAML::Node& node) {
  CheckKeys(node, "game", {"leader_actions", "follower_actions",
                           "alpha_leader", "rewards", "labels"});
  const auto rows = ParseLabels(Required(node, "leader_actions", "game"),
                                "game.leader_actions");
  const auto cols = ParseLabels(Required(node, "follower_actions", "game"),
                                "game.follower_actions");
  double alpha_leader = 0.0;
  Optional(node, "alpha_leader", alpha_leader);
  if (!(alpha_leader >= 0.0 && alpha_leader <= 1.0)) {
    Fail(node["alpha_leader"], "game.alpha_leader must lie in [0,1]");
  }
  const bool has_rewards = static_cast<bool>(node["rewards"]);
  const bool has_labels = static_cast<bool>(node["labels"]);
  if (has_rewards == has_labels) {
    Fail(node, "game needs exactly one of 'rewards' or 'labels'");
  }
  std::vector<std::vector<RewardPair>> rewards;
  if (has_rewards) {
    rewards = ParseGrid<RewardPair>(
        node["rewards"], "game.rewards", rows.size(), cols.size(),
        [](const YAML::Node& c) {
          return RewardPair{As<double>(c[0], "reward"),
                            As<double>(c[1], "reward")};
        });
  } else {
    rewards = BuildResponsibilityMatrix(ParseGrid<CellLabels>(
        node["labels"], "game.labels", rows.size(), cols.size(),
        [](const YAML::Node& c) {
          return CellLabels{ParseLabel(c[0]), ParseLabel(c[1])};
        }));
  }
  return AltruismGame(rows, cols, std::move(rewards), alpha_leader);
}

inline WeightTable ParseWeightTable(const YAML::Node& node,
                                    const AltruismGame& game) {
  if (!node.IsMap()) Fail(node, "weights must be a mapping by leader action");
  WeightTable table(game.num_leader_actions(),
                    std::vector<CellWeights>(game.num_follower_actions()));
  std::vector<std::vector<bool>> seen(
      game.num_leader_actions(),
      std::vector<bool>(game.num_follower_actions(), false));
  for (const auto& row : node) {
    const std::string a = row.first.as<std::string>();
    const int i = game.FindLeaderAction(a);
    if (i < 0) Fail(row.first, "weights: unknown leader action '" + a + "'");
    if (!row.second.IsMap()) {
      Fail(row.second, "weights." + a + " must be a mapping");
    }
    for (const auto& cell : row.second) {
      const std::string b = cell.first.as<std::string>();
      const int j = game.FindFollowerAction(b);
      if (j < 0) {
        Fail(cell.first, "weights." + a + ": unknown follower action '" + b +
                             "'");
      }
      const std::string where = "weights." + a + "." + b;
      CheckKeys(cell.second, where, {"leader", "follower"});
      table[i][j].leader = ParseWeights(
          Required(cell.second, "leader", where), where + ".leader");
      table[i][j].follower = ParseWeights(
          Required(cell.second, "follower", where), where + ".follower");
      seen[i][j] = true;
    }
  }
  for (int i = 0; i < game.num_leader_actions(); ++i) {
    for (int j = 0; j < game.num_follower_actions(); ++j) {
      if (!seen[i][j]) {
        Fail(node, "weights missing cell (" + game.leader_action(i) + ", " +
                       game.follower_action(j) + ")");
      }
    }
  }
  return table;
}

}  // namespace scenario_internal

inline Scenario ParseScenario(const YAML::Node& root) {
  using namespace scenario_internal;
  CheckKeys(root, "scenario",
            {"name", "game", "weights", "features", "vehicle", "leader_start",
             "follower_start", "true_alpha", "strategy", "episode"});
  Scenario s;
  Optional(root, "name", s.name);
  s.game = ParseGame(Required(root, "game", "scenario"));
  s.weights = ParseWeightTable(Required(root, "weights", "scenario"), s.game);

  if (const YAML::Node f = root["features"]) {
    CheckKeys(f, "features",
              {"lambda_x", "lambda_theta", "speed_coeff", "width", "length",
               "epsilon", "delta", "x_left", "x_right", "v_limit",
               "theta_lane"});
    FeatureParams& p = s.features;
    Optional(f, "lambda_x", p.lambda_x);
    Optional(f, "lambda_theta", p.lambda_theta);
    Optional(f, "speed_coeff", p.speed_coeff);
    Optional(f, "width", p.width);
    Optional(f, "length", p.length);
    Optional(f, "epsilon", p.epsilon);
    Optional(f, "delta", p.delta);
    Optional(f, "x_left", p.x_left);
    Optional(f, "x_right", p.x_right);
    Optional(f, "v_limit", p.v_limit);
    Optional(f, "theta_lane", p.theta_lane);
    if (!(p.width > 0 && p.length > 0 && p.epsilon >= 0 && p.delta >= 0)) {
      Fail(f, "features: vehicle dimensions must be positive");
    }
  }
  if (const YAML::Node v = root["vehicle"]) {
    CheckKeys(v, "vehicle", {"accel_max", "steer_max", "wheelbase"});
    Optional(v, "accel_max", s.limits.accel_max);
    Optional(v, "steer_max", s.limits.steer_max);
    Optional(v, "wheelbase", s.limits.wheelbase);
    if (!(s.limits.accel_max > 0 && s.limits.steer_max > 0 &&
          s.limits.wheelbase > 0)) {
      Fail(v, "vehicle limits must be positive");
    }
  }
  s.leader_start =
      ParseState(Required(root, "leader_start", "scenario"), "leader_start");
  s.follower_start = ParseState(Required(root, "follower_start", "scenario"),
                                "follower_start");
  const YAML::Node alpha = Required(root, "true_alpha", "scenario");
  s.true_alpha = As<double>(alpha, "true_alpha");
  if (!(s.true_alpha >= 0.0 && s.true_alpha <= 1.0)) {
    Fail(alpha, "true_alpha must lie in [0,1]");
  }

  if (const YAML::Node st = root["strategy"]) {
    CheckKeys(st, "strategy", {"kind", "lambda", "conflict_aware",
                               "positive_part", "tie_tolerance"});
    if (const YAML::Node k = st["kind"]) {
      try {
        s.strategy.kind = ParseStrategyKind(As<std::string>(k, "kind"));
      } catch (const ScenarioError&) {
        throw;
      } catch (const InputError& e) {
        Fail(k, e.what());
      }
    }
    Optional(st, "lambda", s.strategy.lambda);
    Optional(st, "conflict_aware", s.strategy.conflict_aware);
    Optional(st, "positive_part", s.strategy.positive_part);
    Optional(st, "tie_tolerance", s.strategy.tie_tolerance);
    if (!(s.strategy.lambda >= 0.0)) {
      Fail(st["lambda"], "strategy.lambda must be nonnegative");
    }
  }
  if (const YAML::Node e = root["episode"]) {
    CheckKeys(e, "episode", {"steps", "dt", "horizon", "likelihood_temperature",
                             "follower_role", "seed"});
    Optional(e, "steps", s.episode_steps);
    Optional(e, "dt", s.dt);
    Optional(e, "horizon", s.horizon);
    Optional(e, "likelihood_temperature", s.likelihood_temperature);
    Optional(e, "seed", s.seed);
    if (const YAML::Node r = e["follower_role"]) {
      const std::string role = As<std::string>(r, "follower_role");
      if (role == "follows") {
        s.follower_role = FollowerRole::kFollows;
      } else if (role == "leads") {
        s.follower_role = FollowerRole::kLeads;
      } else {
        Fail(r, "episode.follower_role must be 'follows' or 'leads'");
      }
    }
    if (s.episode_steps < 1) Fail(e["steps"], "episode.steps must be >= 1");
    if (s.horizon < 1) Fail(e["horizon"], "episode.horizon must be >= 1");
    if (!(s.dt > 0.0)) Fail(e["dt"], "episode.dt must be positive");
    if (!(s.likelihood_temperature > 0.0)) {
      Fail(e["likelihood_temperature"],
           "episode.likelihood_temperature must be positive");
    }
  }
  return s;
}

inline Scenario ParseScenarioString(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ScenarioError(e.mark.line + 1, e.msg);
  }
  return ParseScenario(root);
}

inline Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseScenarioString(buf.str());
}

}  // namespace altruism

#endif  // ALTRUISM_SCENARIO_IO_HPP_
