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

#ifndef ALTRUISM_TRACE_HPP_
#define ALTRUISM_TRACE_HPP_

// Run outputs: trace.csv (one row per vehicle per step), belief.jsonl (one
// record per step) and summary.json, plus readers for the plotting code.
//
// trace.csv columns: step, vehicle, x, y, v, theta, accel, steer, cell_i,
// cell_j. The state is the one reached after executing the step's controls.
// The leader row carries the cell the leader planned for; the follower row
// carries the cell the follower actually played.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "altruism/belief.hpp"
#include "altruism/errors.hpp"
#include "altruism/explore.hpp"
#include "altruism/sim.hpp"

namespace altruism {

inline constexpr char kTraceHeader[] =
    "step,vehicle,x,y,v,theta,accel,steer,cell_i,cell_j";

inline nlohmann::json BeliefToJson(const IntervalBelief& belief) {
  nlohmann::json j;
  j["points"] = belief.partition().points();
  j["masses"] = belief.masses();
  j["atom"] = belief.atom() ? nlohmann::json(*belief.atom()) : nlohmann::json();
  return j;
}

inline IntervalBelief BeliefFromJson(const nlohmann::json& j) {
  std::optional<double> atom;
  if (j.contains("atom") && !j["atom"].is_null()) {
    atom = j["atom"].get<double>();
  }
  return IntervalBelief(Partition(j.at("points").get<std::vector<double>>()),
                        j.at("masses").get<std::vector<double>>(), atom);
}

inline nlohmann::json EvaluationToJson(const AltruismGame& game,
                                       const ActionEvaluation& e) {
  return {{"action", e.action},
          {"label", game.leader_action(e.action)},
          {"expected_reward", e.expected_reward},
          {"bonus", e.bonus},
          {"total", e.total},
          {"outcome_distribution", e.outcome_distribution}};
}

inline std::string FormatNumber(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

inline void WriteTraceCsv(std::ostream& out, const EpisodeResult& result) {
  out << kTraceHeader << '\n';
  for (const StepRecord& r : result.steps) {
    auto row = [&](const char* vehicle, const VehicleState& s,
                   const Control& u, int j) {
      out << r.step << ',' << vehicle << ',' << FormatNumber(s.x) << ','
          << FormatNumber(s.y) << ',' << FormatNumber(s.v) << ','
          << FormatNumber(s.theta) << ',' << FormatNumber(u.accel) << ','
          << FormatNumber(u.steer) << ',' << r.leader_cell.leader_action
          << ',' << j << '\n';
    };
    row("leader", r.state.leader, r.leader_control,
        r.leader_cell.follower_action);
    row("follower", r.state.follower, r.follower_control, r.follower_action);
  }
}

inline nlohmann::json StepToJson(const AltruismGame& game,
                                 const StepRecord& r) {
  nlohmann::json evaluations = nlohmann::json::array();
  for (const auto& e : r.decision.evaluations) {
    evaluations.push_back(EvaluationToJson(game, e));
  }
  return {{"step", r.step},
          {"cell", {r.leader_cell.leader_action, r.leader_cell.follower_action}},
          {"cell_labels",
           {game.leader_action(r.leader_cell.leader_action),
            game.follower_action(r.leader_cell.follower_action)}},
          {"follower_action", r.follower_action},
          {"prior", BeliefToJson(r.belief)},
          {"posterior", BeliefToJson(r.posterior)},
          {"likelihoods", r.likelihoods},
          {"belief_reset", r.belief_reset},
          {"evaluations", std::move(evaluations)}};
}

inline void WriteBeliefJsonl(std::ostream& out, const AltruismGame& game,
                             const EpisodeResult& result) {
  for (const StepRecord& r : result.steps) {
    out << StepToJson(game, r).dump() << '\n';
  }
}

inline nlohmann::json SummaryToJson(const Scenario& scenario,
                                    const EpisodeResult& result) {
  const EpisodeSummary& s = result.summary;
  nlohmann::json cells = nlohmann::json::array();
  nlohmann::json labels = nlohmann::json::array();
  for (const Cell& c : s.chosen_cells) {
    cells.push_back({c.leader_action, c.follower_action});
    labels.push_back(scenario.game.leader_action(c.leader_action));
  }
  return {{"scenario", scenario.name},
          {"strategy", StrategyName(scenario.strategy.kind)},
          {"lambda", scenario.strategy.lambda},
          {"conflict_aware", scenario.strategy.conflict_aware},
          {"true_alpha", scenario.true_alpha},
          {"seed", scenario.seed},
          {"steps", static_cast<int>(result.steps.size())},
          {"outcome", s.leader_ahead ? "leader_ahead" : "leader_behind"},
          {"relative_longitudinal", s.relative_longitudinal},
          {"final_support", {s.final_support.lo, s.final_support.hi}},
          {"chosen_cells", std::move(cells)},
          {"chosen_actions", std::move(labels)},
          {"belief_resets", s.belief_resets},
          {"lanes",
           {{"x_left", scenario.features.x_left},
            {"x_right", scenario.features.x_right}}}};
}

// Leader cells recovered from belief.jsonl records, in step order.
inline std::vector<Cell> ChosenCellsFromJsonl(std::istream& in) {
  std::vector<Cell> cells;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    cells.push_back({j.at("cell").at(0).get<int>(),
                     j.at("cell").at(1).get<int>()});
  }
  return cells;
}

struct TraceRow {
  int step = 0;
  std::string vehicle;
  VehicleState state;
  Control control;
  Cell cell;
};

// Parses trace.csv; rejects a wrong header or malformed rows.
inline std::vector<TraceRow> ReadTraceCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw InputError("trace.csv: missing or unexpected header");
  }
  std::vector<TraceRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 10) {
      throw InputError("trace.csv line " + std::to_string(line_no) +
                       ": expected 10 fields");
    }
    try {
      TraceRow r;
      r.step = std::stoi(fields[0]);
      r.vehicle = fields[1];
      r.state = {std::stod(fields[2]), std::stod(fields[3]),
                 std::stod(fields[4]), std::stod(fields[5])};
      r.control = {std::stod(fields[6]), std::stod(fields[7])};
      r.cell = {std::stoi(fields[8]), std::stoi(fields[9])};
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw InputError("trace.csv line " + std::to_string(line_no) +
                       ": malformed number");
    }
  }
  return rows;
}

}  // namespace altruism

#endif  // ALTRUISM_TRACE_HPP_
