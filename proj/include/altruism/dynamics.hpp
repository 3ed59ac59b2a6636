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

#ifndef ALTRUISM_DYNAMICS_HPP_
#define ALTRUISM_DYNAMICS_HPP_

// Kinematic bicycle model and the six trajectory cost features.
//
// Coordinates: x is lateral (m), y is longitudinal (m), heading theta is
// measured from the +y axis with positive theta turning toward +x.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>

#include "altruism/errors.hpp"

namespace altruism {

struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double theta = 0.0;
  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

struct Control {
  double accel = 0.0;
  double steer = 0.0;
  friend bool operator==(const Control&, const Control&) = default;
};

struct VehicleLimits {
  double accel_max = 3.0;   // m/s^2
  double steer_max = 0.3;   // rad
  double wheelbase = 2.7;   // m
};

struct FeatureParams {
  double lambda_x = 0.5;      // 1/m^2
  double lambda_theta = 2.0;  // 1/rad^2
  double speed_coeff = 0.25;  // s^2/m^2
  double width = 2.0;         // W, m
  double length = 4.5;        // L, m
  double epsilon = 0.5;       // lateral ellipse margin, m
  double delta = 2.0;         // longitudinal ellipse margin, m
  double x_left = -2.5;       // left lane centre, m
  double x_right = 2.5;       // right lane centre, m
  double v_limit = 15.0;      // m/s
  double theta_lane = 0.0;    // rad
};

inline constexpr int kNumFeatures = 6;
using FeatureVector = std::array<double, kNumFeatures>;
using WeightVector = std::array<double, kNumFeatures>;

// One semi-implicit Euler step: speed and heading first, then position with
// the updated speed and heading. Speed never goes negative.
inline VehicleState Step(const VehicleState& s, const Control& u, double dt,
                         const VehicleLimits& limits = {}) {
  internal::Require(dt > 0.0, "dt must be positive");
  constexpr double kSlack = 1e-12;
  if (std::fabs(u.accel) > limits.accel_max + kSlack ||
      std::fabs(u.steer) > limits.steer_max + kSlack) {
    throw InputError("control (" + std::to_string(u.accel) + ", " +
                     std::to_string(u.steer) + ") exceeds vehicle limits");
  }
  VehicleState next;
  next.v = std::max(0.0, s.v + u.accel * dt);
  next.theta = s.theta + s.v / limits.wheelbase * std::tan(u.steer) * dt;
  next.x = s.x + next.v * std::sin(next.theta) * dt;
  next.y = s.y + next.v * std::cos(next.theta) * dt;
  return next;
}

// phi_0..phi_5 for vehicle `self` with respect to `other`:
//   0,1  lateral offset from the left / right lane centre
//   2    speed error to the limit
//   3    heading error to the lane
//   4    intrusion into the safety ellipse around `other` (-1 at its centre,
//        0 outside)
//   5    tanh of the longitudinal lead over `other`
// Features 0-3 are 1 - exp(-c * err^2): 0 on target, approaching 1.
inline FeatureVector Features(const VehicleState& self,
                              const VehicleState& other,
                              const FeatureParams& p) {
  auto penalty = [](double coeff, double err) {
    return 1.0 - std::exp(-coeff * err * err);
  };
  const double dx = self.x - other.x;
  const double dy = self.y - other.y;
  const double c = std::cos(other.theta);
  const double s = std::sin(other.theta);
  const double lateral = (dx * c - dy * s) / (p.width + p.epsilon);
  const double longitudinal = (dx * s + dy * c) / (p.length + p.delta);
  return {
      penalty(p.lambda_x, self.x - p.x_left),
      penalty(p.lambda_x, self.x - p.x_right),
      penalty(p.speed_coeff, self.v - p.v_limit),
      penalty(p.lambda_theta, self.theta - p.theta_lane),
      -std::max(0.0, 1.0 - lateral * lateral - longitudinal * longitudinal),
      std::tanh(dy),
  };
}

inline double Dot(const WeightVector& w, const FeatureVector& phi) {
  double total = 0.0;
  for (int k = 0; k < kNumFeatures; ++k) total += w[k] * phi[k];
  return total;
}

// Sum over horizon steps of w . phi(self_t, other_t).
inline double Cost(std::span<const VehicleState> self,
                   std::span<const VehicleState> other,
                   const WeightVector& weights, const FeatureParams& params) {
  internal::Require(self.size() == other.size(),
                    "trajectories must have equal length");
  double total = 0.0;
  for (std::size_t t = 0; t < self.size(); ++t) {
    total += Dot(weights, Features(self[t], other[t], params));
  }
  return total;
}

}  // namespace altruism

#endif  // ALTRUISM_DYNAMICS_HPP_
