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

#ifndef ALTRUISM_SIM_HPP_
#define ALTRUISM_SIM_HPP_

// Closed-loop two-vehicle lane merge. The leader picks a game action with
// SelectAction, both vehicles plan and execute one control via MpcStep, and
// the leader updates its belief over the follower's altruism from the
// follower's observed control.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "altruism/belief.hpp"
#include "altruism/dynamics.hpp"
#include "altruism/errors.hpp"
#include "altruism/explore.hpp"
#include "altruism/game.hpp"
#include "altruism/planner.hpp"

namespace altruism {

struct CellWeights {
  WeightVector leader{};
  WeightVector follower{};
};

using WeightTable = std::vector<std::vector<CellWeights>>;

// How the simulated follower picks its game action.
enum class FollowerRole {
  kFollows,  // replies to the leader's action (presumes the leader leads)
  kLeads,    // plays the column it would commit to as leader
};

struct Scenario {
  std::string name;
  AltruismGame game{{"A"}, {"B"}, {{{0.0, 0.0}}}};
  WeightTable weights;
  FeatureParams features;
  VehicleLimits limits;
  VehicleState leader_start;
  VehicleState follower_start;
  double true_alpha = 0.5;
  ExplorationStrategy strategy;
  int episode_steps = 30;
  double dt = 0.2;
  int horizon = 6;
  double likelihood_temperature = 1.0;
  FollowerRole follower_role = FollowerRole::kFollows;
  std::uint64_t seed = 0;

  PlannerConfig planner() const {
    PlannerConfig c;
    c.horizon = horizon;
    c.dt = dt;
    c.limits = limits;
    c.features = features;
    return c;
  }

  void Validate() const {
    internal::Require(weights.size() ==
                          static_cast<std::size_t>(game.num_leader_actions()),
                      "weight table must have one row per leader action");
    for (const auto& row : weights) {
      internal::Require(
          row.size() == static_cast<std::size_t>(game.num_follower_actions()),
          "weight table must have one entry per follower action");
    }
    internal::RequireUnitInterval(true_alpha, "true_alpha");
    internal::Require(episode_steps >= 1, "episode_steps must be >= 1");
    internal::Require(likelihood_temperature > 0.0,
                      "likelihood_temperature must be positive");
    strategy.Validate();
    planner().Validate();
  }
};

struct StepRecord {
  int step = 0;
  // Leader action and the follower reply it planned against.
  Cell leader_cell;
  int follower_action = 0;
  Control leader_control;
  Control follower_control;
  WorldState state;  // after executing the controls
  IntervalBelief belief = IntervalBelief::Uniform();     // used to decide
  IntervalBelief posterior = IntervalBelief::Uniform();  // after observing
  Decision decision;
  std::vector<double> likelihoods;
  bool belief_reset = false;
};

struct EpisodeSummary {
  double relative_longitudinal = 0.0;  // leader y - follower y
  bool leader_ahead = false;
  AlphaRange final_support;
  std::vector<Cell> chosen_cells;
  int belief_resets = 0;
};

struct EpisodeResult {
  std::vector<StepRecord> steps;
  EpisodeSummary summary;
};

inline std::vector<double> Softmax(std::span<const double> logits) {
  internal::Require(!logits.empty(), "softmax of an empty vector");
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out[k] = std::exp(logits[k] - top);
    total += out[k];
  }
  for (double& p : out) p /= total;
  return out;
}

// P(B_k | A_i, u_C): softmax over columns of temperature * w_ikC . phi,
// with phi evaluated on the follower state reached under the observed
// control, relative to the leader's realised state.
inline std::vector<double> ObservationLikelihoods(
    const AltruismGame& game, int leader_action,
    const Control& observed_follower_control, const WorldState& before,
    const VehicleState& leader_after, const WeightTable& weights,
    const FeatureParams& features, const VehicleLimits& limits, double dt,
    double temperature = 1.0) {
  game.CheckCell(leader_action, 0);
  internal::Require(temperature > 0.0, "temperature must be positive");
  const VehicleState follower_after =
      Step(before.follower, observed_follower_control, dt, limits);
  const FeatureVector phi = Features(follower_after, leader_after, features);
  std::vector<double> logits(game.num_follower_actions());
  for (int k = 0; k < game.num_follower_actions(); ++k) {
    logits[k] = temperature * Dot(weights.at(leader_action).at(k).follower, phi);
  }
  return Softmax(logits);
}

// Initial belief: uniform on the game's partition, further split at the
// ends of the conflict region so conflict-aware scoring is well defined.
inline IntervalBelief InitialBelief(const AltruismGame& game) {
  std::vector<double> ends;
  for (const auto& iv : ConflictRegion(game)) {
    ends.push_back(iv.lo);
    ends.push_back(iv.hi);
  }
  return IntervalBelief::Uniform(PartitionDomain(game).Merged(ends));
}

// Most probable reply under the belief, lowest index among ties.
inline int PredictedReply(const Decision& decision) {
  const auto& dist = decision.evaluations.at(decision.chosen).outcome_distribution;
  return static_cast<int>(std::max_element(dist.begin(), dist.end()) -
                          dist.begin());
}

inline EpisodeResult RunEpisode(const Scenario& scenario) {
  scenario.Validate();
  const AltruismGame& game = scenario.game;
  const PlannerConfig planner = scenario.planner();
  const IntervalBelief prior = InitialBelief(game);

  EpisodeResult result;
  WorldState world{scenario.leader_start, scenario.follower_start};
  IntervalBelief belief = prior;
  for (int t = 0; t < scenario.episode_steps; ++t) {
    StepRecord rec;
    rec.step = t;
    rec.belief = belief;
    rec.decision = SelectAction(game, belief, scenario.strategy);
    const int i = rec.decision.chosen;
    rec.leader_cell = {i, PredictedReply(rec.decision)};
    rec.follower_action =
        scenario.follower_role == FollowerRole::kFollows
            ? FollowerBestResponse(game, i, scenario.true_alpha)
            : LeaderPreferenceOfFollower(game, scenario.true_alpha);

    const CellWeights& planned =
        scenario.weights[i][rec.leader_cell.follower_action];
    const CellWeights& actual = scenario.weights[i][rec.follower_action];
    const MpcStepResult mpc = MpcStep(world, planned.leader, planned.follower,
                                      actual.follower, planner);
    rec.leader_control = mpc.leader_control;
    rec.follower_control = mpc.follower_control;

    rec.likelihoods = ObservationLikelihoods(
        game, i, mpc.follower_control, world, mpc.next.leader,
        scenario.weights, scenario.features, scenario.limits, scenario.dt,
        scenario.likelihood_temperature);
    try {
      belief = BayesUpdate(belief, game, i, rec.likelihoods);
    } catch (const InferenceContradiction&) {
      belief = prior;
      rec.belief_reset = true;
      ++result.summary.belief_resets;
    }
    rec.posterior = belief;
    world = mpc.next;
    rec.state = world;
    result.summary.chosen_cells.push_back(rec.leader_cell);
    result.steps.push_back(std::move(rec));
  }
  result.summary.relative_longitudinal = world.leader.y - world.follower.y;
  result.summary.leader_ahead = result.summary.relative_longitudinal > 0.0;
  result.summary.final_support = belief.Support();
  return result;
}

struct ConflictExperimentResult {
  EpisodeResult unaware;
  EpisodeResult aware;
};

inline ConflictExperimentResult RunConflictExperiment(Scenario scenario) {
  scenario.strategy.conflict_aware = false;
  ConflictExperimentResult out;
  out.unaware = RunEpisode(scenario);
  scenario.strategy.conflict_aware = true;
  out.aware = RunEpisode(scenario);
  return out;
}

}  // namespace altruism

#endif  // ALTRUISM_SIM_HPP_
