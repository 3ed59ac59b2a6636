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

#ifndef ALTRUISM_PLANNER_HPP_
#define ALTRUISM_PLANNER_HPP_

// Bi-level trajectory optimisation: the leader searches over its controls
// while the follower's optimal reply is recomputed for every candidate.
//
// Controls are parameterised as a constant (accel, steer) over each half of
// the horizon. Both levels use the same derivative-free coordinate search:
// start from zero controls, sweep each coordinate over a 5-point grid,
// accept strict improvements, and shrink the grid 4x per round.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "altruism/dynamics.hpp"
#include "altruism/errors.hpp"

namespace altruism {

using ControlSequence = std::vector<Control>;
using Trajectory = std::vector<VehicleState>;

struct PlannerConfig {
  int horizon = 6;  // steps
  double dt = 0.2;  // s
  VehicleLimits limits;
  FeatureParams features;
  int rounds = 3;
  int max_sweeps = 4;
  double tolerance = 1e-6;

  void Validate() const {
    internal::Require(horizon >= 1, "horizon must be at least 1 step");
    internal::Require(dt > 0.0, "dt must be positive");
    internal::Require(rounds >= 1 && max_sweeps >= 1,
                      "solver needs at least one round and sweep");
  }
};

struct PlanRequest {
  VehicleState leader;
  VehicleState follower;
  WeightVector leader_weights{};
  WeightVector follower_weights{};
};

struct Plan {
  ControlSequence leader_controls;
  ControlSequence follower_controls;
  Trajectory leader_trajectory;
  Trajectory follower_trajectory;
  double leader_cost = 0.0;
  double follower_cost = 0.0;
  // Leader objective of every candidate tried in the last refinement round.
  std::vector<double> final_candidate_costs;
};

struct WorldState {
  VehicleState leader;
  VehicleState follower;
};

namespace internal {

// (accel, steer) for the first half, then for the second half.
using ControlParams = std::array<double, 4>;

inline ControlSequence Expand(const ControlParams& p, int horizon) {
  ControlSequence seq(horizon);
  const int first_half = (horizon + 1) / 2;
  for (int t = 0; t < horizon; ++t) {
    seq[t] = t < first_half ? Control{p[0], p[1]} : Control{p[2], p[3]};
  }
  return seq;
}

struct SearchResult {
  ControlParams params{};
  double value = 0.0;
  std::vector<double> last_round_values;
};

template <typename Objective>
SearchResult CoordinateSearch(const Objective& objective,
                              const PlannerConfig& config) {
  const std::array<double, 4> bound = {
      config.limits.accel_max, config.limits.steer_max,
      config.limits.accel_max, config.limits.steer_max};
  SearchResult result;
  result.value = objective(result.params);
  double spacing_scale = 0.5;
  for (int round = 0; round < config.rounds; ++round) {
    const bool last_round = round + 1 == config.rounds;
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
      const double sweep_start = result.value;
      for (int c = 0; c < 4; ++c) {
        const double spacing = bound[c] * spacing_scale;
        ControlParams best_params = result.params;
        double best_value = result.value;
        for (int offset = -2; offset <= 2; ++offset) {
          if (offset == 0) continue;
          ControlParams candidate = result.params;
          candidate[c] = std::clamp(result.params[c] + offset * spacing,
                                    -bound[c], bound[c]);
          if (candidate[c] == result.params[c]) continue;
          const double value = objective(candidate);
          if (last_round) result.last_round_values.push_back(value);
          if (value > best_value) {
            best_value = value;
            best_params = candidate;
          }
        }
        result.params = best_params;
        result.value = best_value;
      }
      if (result.value - sweep_start < config.tolerance) break;
    }
    spacing_scale *= 0.25;
  }
  return result;
}

}  // namespace internal

inline Trajectory Rollout(const VehicleState& start,
                          std::span<const Control> controls, double dt,
                          const VehicleLimits& limits) {
  Trajectory out;
  out.reserve(controls.size());
  VehicleState s = start;
  for (const Control& u : controls) {
    s = Step(s, u, dt, limits);
    out.push_back(s);
  }
  return out;
}

// Follower controls maximising the follower's objective against a fixed
// leader control sequence.
inline ControlSequence FollowerPlan(const VehicleState& follower,
                                    const VehicleState& leader,
                                    std::span<const Control> leader_controls,
                                    const WeightVector& follower_weights,
                                    const PlannerConfig& config) {
  config.Validate();
  internal::Require(
      leader_controls.size() == static_cast<std::size_t>(config.horizon),
      "leader control sequence must span the horizon");
  const Trajectory leader_traj =
      Rollout(leader, leader_controls, config.dt, config.limits);
  auto objective = [&](const internal::ControlParams& p) {
    const ControlSequence u = internal::Expand(p, config.horizon);
    const Trajectory traj = Rollout(follower, u, config.dt, config.limits);
    return Cost(traj, leader_traj, follower_weights, config.features);
  };
  return internal::Expand(internal::CoordinateSearch(objective, config).params,
                          config.horizon);
}

inline Plan BilevelPlan(const PlanRequest& request,
                        const PlannerConfig& config) {
  config.Validate();
  auto objective = [&](const internal::ControlParams& p) {
    const ControlSequence u = internal::Expand(p, config.horizon);
    const Trajectory leader_traj =
        Rollout(request.leader, u, config.dt, config.limits);
    const ControlSequence reply = FollowerPlan(
        request.follower, request.leader, u, request.follower_weights, config);
    const Trajectory follower_traj =
        Rollout(request.follower, reply, config.dt, config.limits);
    return Cost(leader_traj, follower_traj, request.leader_weights,
                config.features);
  };
  const internal::SearchResult best =
      internal::CoordinateSearch(objective, config);

  Plan plan;
  plan.leader_controls = internal::Expand(best.params, config.horizon);
  plan.follower_controls =
      FollowerPlan(request.follower, request.leader, plan.leader_controls,
                   request.follower_weights, config);
  plan.leader_trajectory = Rollout(request.leader, plan.leader_controls,
                                   config.dt, config.limits);
  plan.follower_trajectory = Rollout(request.follower, plan.follower_controls,
                                     config.dt, config.limits);
  plan.leader_cost = Cost(plan.leader_trajectory, plan.follower_trajectory,
                          request.leader_weights, config.features);
  plan.follower_cost = Cost(plan.follower_trajectory, plan.leader_trajectory,
                            request.follower_weights, config.features);
  plan.final_candidate_costs = best.last_round_values;
  return plan;
}

struct MpcStepResult {
  Control leader_control;
  Control follower_control;
  WorldState next;
  Plan plan;
  // The follower's own plan against the leader's published controls.
  ControlSequence follower_controls;
};

// Plans the whole horizon and executes only the first control of each
// vehicle. The leader plans against `modeled_follower_weights`; the follower
// replans with `follower_weights` against the leader's published plan.
inline MpcStepResult MpcStep(const WorldState& world,
                             const WeightVector& leader_weights,
                             const WeightVector& modeled_follower_weights,
                             const WeightVector& follower_weights,
                             const PlannerConfig& config) {
  MpcStepResult out;
  out.plan = BilevelPlan(
      {world.leader, world.follower, leader_weights, modeled_follower_weights},
      config);
  out.follower_controls =
      modeled_follower_weights == follower_weights
          ? out.plan.follower_controls
          : FollowerPlan(world.follower, world.leader,
                         out.plan.leader_controls, follower_weights, config);
  out.leader_control = out.plan.leader_controls.front();
  out.follower_control = out.follower_controls.front();
  out.next.leader =
      Step(world.leader, out.leader_control, config.dt, config.limits);
  out.next.follower =
      Step(world.follower, out.follower_control, config.dt, config.limits);
  return out;
}

}  // namespace altruism

#endif  // ALTRUISM_PLANNER_HPP_
