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

#ifndef ALTRUISM_BELIEF_HPP_
#define ALTRUISM_BELIEF_HPP_

// Piecewise-uniform beliefs over the follower's altruism coefficient.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "altruism/errors.hpp"
#include "altruism/game.hpp"

namespace altruism {

// Breakpoints are merged when closer than this.
inline constexpr double kBreakpointTolerance = 1e-9;

// Width used for the entropy of a point mass, so that entropies and bonuses
// stay finite after a belief collapses.
inline constexpr double kPointMassWidth = 1e-6;

struct AlphaRange {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
  bool Contains(double alpha) const { return alpha >= lo && alpha <= hi; }
  friend bool operator==(const AlphaRange&, const AlphaRange&) = default;
};

// 0 = t_0 < t_1 < ... < t_K = 1.
class Partition {
 public:
  Partition() : points_{0.0, 1.0} {}
  explicit Partition(std::vector<double> points) : points_(std::move(points)) {
    internal::Require(points_.size() >= 2, "partition needs at least 2 points");
    internal::Require(points_.front() == 0.0 && points_.back() == 1.0,
                      "partition must start at 0 and end at 1");
    for (std::size_t k = 1; k < points_.size(); ++k) {
      internal::Require(points_[k] > points_[k - 1],
                        "partition points must be strictly increasing");
    }
  }

  // Unit interval split at the given interior points (outside points and
  // near-duplicates are dropped).
  static Partition FromInterior(std::span<const double> interior) {
    std::vector<double> pts{0.0, 1.0};
    return Partition(std::move(pts)).Merged(interior);
  }

  std::size_t num_cells() const { return points_.size() - 1; }
  const std::vector<double>& points() const { return points_; }
  double lower(std::size_t k) const { return points_.at(k); }
  double upper(std::size_t k) const { return points_.at(k + 1); }
  double width(std::size_t k) const { return upper(k) - lower(k); }
  double midpoint(std::size_t k) const { return 0.5 * (lower(k) + upper(k)); }

  // Cell holding `alpha`; a breakpoint belongs to the cell on its right,
  // except 1 which belongs to the last cell.
  std::size_t CellOf(double alpha) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), alpha);
    std::size_t k = static_cast<std::size_t>(it - points_.begin());
    k = k == 0 ? 0 : k - 1;
    return std::min(k, num_cells() - 1);
  }

  bool HasPoint(double value) const {
    return std::any_of(points_.begin(), points_.end(), [&](double p) {
      return std::fabs(p - value) <= kBreakpointTolerance;
    });
  }

  // True when every point of `coarse` is also a point of this partition.
  bool Refines(const Partition& coarse) const {
    return std::all_of(coarse.points_.begin(), coarse.points_.end(),
                       [&](double p) { return HasPoint(p); });
  }

  Partition Merged(std::span<const double> extra) const {
    std::vector<double> pts = points_;
    for (double p : extra) {
      const bool known = std::any_of(pts.begin(), pts.end(), [&](double q) {
        return std::fabs(q - p) <= kBreakpointTolerance;
      });
      if (p > 0.0 && p < 1.0 && !known) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    return Partition(std::move(pts));
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<double> points_;
};

// Splits [0,1] at every reward-line crossing of every leader action.
inline Partition PartitionDomain(const AltruismGame& game) {
  std::vector<double> interior;
  for (int i = 0; i < game.num_leader_actions(); ++i) {
    for (const Breakpoint& p : IntersectionPoints(game, i)) {
      interior.push_back(p.value);
    }
  }
  return Partition::FromInterior(interior);
}

// Probability masses on the cells of a partition, uniform inside each cell.
// A collapsed belief is represented as a point mass (`atom`), whose mass is
// stored on the cell containing it.
class IntervalBelief {
 public:
  IntervalBelief(Partition partition, std::vector<double> masses,
                 std::optional<double> atom = std::nullopt)
      : partition_(std::move(partition)),
        masses_(std::move(masses)),
        atom_(atom) {
    internal::Require(masses_.size() == partition_.num_cells(),
                      "one mass per partition cell required");
    double total = 0.0;
    for (double m : masses_) {
      internal::Require(m >= 0.0 && std::isfinite(m),
                        "belief masses must be nonnegative");
      total += m;
    }
    internal::Require(std::fabs(total - 1.0) <= 1e-9,
                      "belief masses must sum to 1");
    if (atom_) internal::RequireUnitInterval(*atom_, "point mass location");
  }

  static IntervalBelief Uniform(const Partition& partition = Partition()) {
    std::vector<double> masses(partition.num_cells());
    for (std::size_t k = 0; k < masses.size(); ++k) {
      masses[k] = partition.width(k);
    }
    return FromWeights(partition, std::move(masses));
  }

  // Uniform on `range`, on `base` refined at the range endpoints. A
  // zero-width range gives a point mass.
  static IntervalBelief UniformOn(const Partition& base, AlphaRange range) {
    internal::RequireUnitInterval(range.lo, "range lower bound");
    internal::RequireUnitInterval(range.hi, "range upper bound");
    internal::Require(range.lo <= range.hi, "range bounds out of order");
    if (range.hi - range.lo <= kBreakpointTolerance) {
      return PointMass(base, range.lo);
    }
    const double ends[] = {range.lo, range.hi};
    Partition fine = base.Merged(ends);
    std::vector<double> masses(fine.num_cells(), 0.0);
    for (std::size_t k = 0; k < masses.size(); ++k) {
      const double lo = std::max(fine.lower(k), range.lo);
      const double hi = std::min(fine.upper(k), range.hi);
      masses[k] = std::max(0.0, hi - lo);
    }
    return FromWeights(fine, std::move(masses));
  }

  static IntervalBelief PointMass(const Partition& base, double at) {
    internal::RequireUnitInterval(at, "point mass location");
    std::vector<double> masses(base.num_cells(), 0.0);
    masses[base.CellOf(at)] = 1.0;
    return IntervalBelief(base, std::move(masses), at);
  }

  // Normalizes nonnegative weights; all-zero weights are a contradiction.
  static IntervalBelief FromWeights(const Partition& partition,
                                    std::vector<double> weights,
                                    std::optional<double> atom = std::nullopt) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) {
      throw InferenceContradiction(
          "observation is inconsistent with every region of the belief");
    }
    for (double& w : weights) w /= total;
    return IntervalBelief(partition, std::move(weights), atom);
  }

  const Partition& partition() const { return partition_; }
  const std::vector<double>& masses() const { return masses_; }
  std::size_t num_cells() const { return masses_.size(); }
  double mass(std::size_t k) const { return masses_.at(k); }
  const std::optional<double>& atom() const { return atom_; }
  bool is_point_mass() const { return atom_.has_value(); }

  // Value of alpha at which piecewise-constant functions are evaluated for
  // cell k.
  double Representative(std::size_t k) const {
    return atom_ ? *atom_ : partition_.midpoint(k);
  }

  // Smallest closed range holding all the mass.
  AlphaRange Support() const {
    if (atom_) return {*atom_, *atom_};
    std::size_t first = masses_.size(), last = 0;
    for (std::size_t k = 0; k < masses_.size(); ++k) {
      if (masses_[k] > 0.0) {
        first = std::min(first, k);
        last = k;
      }
    }
    return {partition_.lower(first), partition_.upper(last)};
  }

  // Multiplies each cell's mass by a factor and renormalizes.
  IntervalBelief Reweighted(std::span<const double> factors) const {
    internal::Require(factors.size() == masses_.size(),
                      "one factor per partition cell required");
    std::vector<double> weights(masses_.size());
    for (std::size_t k = 0; k < masses_.size(); ++k) {
      internal::Require(factors[k] >= 0.0, "factors must be nonnegative");
      weights[k] = masses_[k] * factors[k];
    }
    return FromWeights(partition_, std::move(weights), atom_);
  }

  // Same density expressed on a finer partition.
  IntervalBelief RefinedTo(const Partition& fine) const {
    internal::Require(fine.Refines(partition_),
                      "target partition does not refine the belief's");
    if (atom_) return PointMass(fine, *atom_);
    std::vector<double> masses(fine.num_cells());
    for (std::size_t k = 0; k < fine.num_cells(); ++k) {
      const std::size_t parent = partition_.CellOf(fine.midpoint(k));
      masses[k] = masses_[parent] * fine.width(k) / partition_.width(parent);
    }
    return FromWeights(fine, std::move(masses));
  }

 private:
  Partition partition_;
  std::vector<double> masses_;
  std::optional<double> atom_;
};

// Intersects the current range with the observed one; a disjoint observation
// clamps onto the nearest end of the current range.
inline AlphaRange PassiveUpdate(AlphaRange current, AlphaRange observed) {
  internal::RequireUnitInterval(current.lo, "current.lo");
  internal::RequireUnitInterval(current.hi, "current.hi");
  internal::RequireUnitInterval(observed.lo, "observed.lo");
  internal::RequireUnitInterval(observed.hi, "observed.hi");
  internal::Require(current.lo <= current.hi && observed.lo <= observed.hi,
                    "range bounds out of order");
  return {std::max(current.lo, std::min(current.hi, observed.lo)),
          std::min(current.hi, std::max(current.lo, observed.hi))};
}

// Closed alpha ranges over which the follower's best reply to row
// `leader_action` is `follower_action`.
inline std::vector<AlphaRange> CompatibleRanges(const AltruismGame& game,
                                                int leader_action,
                                                int follower_action) {
  game.CheckCell(leader_action, follower_action);
  std::vector<double> pts{0.0};
  for (const Breakpoint& p : IntersectionPoints(game, leader_action)) {
    pts.push_back(p.value);
  }
  pts.push_back(1.0);
  std::vector<AlphaRange> out;
  auto matches = [&](double a) {
    return FollowerBestResponse(game, leader_action, a) == follower_action;
  };
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double lo = pts[k], hi = pts[k + 1];
    if (!matches(0.5 * (lo + hi))) {
      if (matches(lo) && (out.empty() || out.back().hi < lo)) {
        out.push_back({lo, lo});
      }
      continue;
    }
    if (!out.empty() && out.back().hi >= lo) {
      out.back().hi = hi;
    } else {
      out.push_back({lo, hi});
    }
  }
  if (matches(1.0) && (out.empty() || out.back().hi < 1.0)) {
    out.push_back({1.0, 1.0});
  }
  return out;
}

// Differential entropy -sum m_k ln(m_k / w_k).
inline double Entropy(const IntervalBelief& belief) {
  if (belief.is_point_mass()) return std::log(kPointMassWidth);
  double h = 0.0;
  for (std::size_t k = 0; k < belief.num_cells(); ++k) {
    const double m = belief.mass(k);
    if (m > 0.0) h -= m * std::log(m / belief.partition().width(k));
  }
  return h;
}

// Restriction of the belief to `range`, renormalized.
inline IntervalBelief ConditionOnInterval(const IntervalBelief& belief,
                                          AlphaRange range) {
  internal::RequireUnitInterval(range.lo, "range lower bound");
  internal::RequireUnitInterval(range.hi, "range upper bound");
  internal::Require(range.lo <= range.hi, "range bounds out of order");
  if (belief.is_point_mass()) {
    if (!range.Contains(*belief.atom())) {
      throw InferenceContradiction("point-mass belief lies outside [" +
                                   std::to_string(range.lo) + "," +
                                   std::to_string(range.hi) + "]");
    }
    return belief;
  }
  const double ends[] = {range.lo, range.hi};
  const IntervalBelief fine =
      belief.RefinedTo(belief.partition().Merged(ends));
  std::vector<double> keep(fine.num_cells());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const double mid = fine.partition().midpoint(k);
    keep[k] = (mid > range.lo && mid < range.hi) ? 1.0 : 0.0;
  }
  return fine.Reweighted(keep);
}

// Bayes' rule over partition cells: each cell's mass is multiplied by the
// likelihood of the column the follower would play for alpha in that cell.
inline IntervalBelief BayesUpdate(const IntervalBelief& belief,
                                  const AltruismGame& game, int leader_action,
                                  std::span<const double> likelihoods) {
  game.CheckCell(leader_action, 0);
  internal::Require(
      likelihoods.size() ==
          static_cast<std::size_t>(game.num_follower_actions()),
      "one likelihood per follower action required");
  bool any_positive = false;
  for (double l : likelihoods) {
    internal::Require(l >= 0.0 && std::isfinite(l),
                      "likelihoods must be nonnegative");
    any_positive = any_positive || l > 0.0;
  }
  internal::Require(any_positive, "at least one likelihood must be positive");
  std::vector<double> row_points;
  for (const Breakpoint& p : IntersectionPoints(game, leader_action)) {
    row_points.push_back(p.value);
  }
  internal::Require(belief.partition().Refines(
                        Partition::FromInterior(row_points)),
                    "belief partition does not refine the game's partition");
  std::vector<double> factors(belief.num_cells(), 0.0);
  for (std::size_t k = 0; k < belief.num_cells(); ++k) {
    if (belief.mass(k) == 0.0) continue;
    const int j = FollowerBestResponse(game, leader_action,
                                       belief.Representative(k));
    factors[k] = likelihoods[j];
  }
  return belief.Reweighted(factors);
}

// P(alpha < x).
inline double MassBelow(const IntervalBelief& belief, double x) {
  internal::RequireUnitInterval(x, "x");
  if (belief.is_point_mass()) return *belief.atom() < x ? 1.0 : 0.0;
  double total = 0.0;
  const Partition& p = belief.partition();
  for (std::size_t k = 0; k < belief.num_cells(); ++k) {
    if (p.upper(k) <= x) {
      total += belief.mass(k);
    } else if (p.lower(k) < x) {
      total += belief.mass(k) * (x - p.lower(k)) / p.width(k);
    }
  }
  return std::min(1.0, total);
}

}  // namespace altruism

#endif  // ALTRUISM_BELIEF_HPP_
