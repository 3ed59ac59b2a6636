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

#ifndef ALTRUISM_CLI_HPP_
#define ALTRUISM_CLI_HPP_

// Command-line driver: applies overrides to a scenario, runs one episode
// per (strategy, alpha) combination and writes each run's outputs.
//
// A single combination writes straight into the output directory; a sweep
// writes one subdirectory per combination, named "<strategy>_alpha<alpha>".

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "altruism/errors.hpp"
#include "altruism/explore.hpp"
#include "altruism/plot.hpp"
#include "altruism/scenario_io.hpp"
#include "altruism/sim.hpp"
#include "altruism/trace.hpp"

namespace altruism {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitContradiction = 2;

struct RunConfig {
  std::string scenario_path;
  std::vector<StrategyKind> strategies;  // empty: keep the scenario's
  std::optional<double> lambda;
  std::vector<double> alphas;  // empty: keep the scenario's
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = "out";
  bool plots = false;
  bool conflict_aware = false;
};

struct RunJob {
  Scenario scenario;
  std::filesystem::path dir;
};

inline std::string AlphaTag(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", alpha);
  return buf;
}

// Validates overrides and expands the sweep into jobs.
inline std::vector<RunJob> PlanJobs(const RunConfig& config) {
  Scenario base = LoadScenario(config.scenario_path);
  if (config.lambda) {
    internal::Require(*config.lambda >= 0.0 && std::isfinite(*config.lambda),
                      "--lambda must be nonnegative");
    base.strategy.lambda = *config.lambda;
  }
  if (config.steps) {
    internal::Require(*config.steps >= 1, "--steps must be at least 1");
    base.episode_steps = *config.steps;
  }
  if (config.seed) base.seed = *config.seed;
  if (config.conflict_aware) base.strategy.conflict_aware = true;
  for (double a : config.alphas) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw InputError("--alpha value " + AlphaTag(a) + " must lie in [0,1]");
    }
  }
  const std::vector<StrategyKind> strategies =
      config.strategies.empty() ? std::vector{base.strategy.kind}
                                : config.strategies;
  const std::vector<double> alphas =
      config.alphas.empty() ? std::vector{base.true_alpha} : config.alphas;
  const bool sweep = strategies.size() * alphas.size() > 1;

  std::vector<RunJob> jobs;
  for (StrategyKind kind : strategies) {
    for (double alpha : alphas) {
      RunJob job{base, config.out_dir};
      job.scenario.strategy.kind = kind;
      job.scenario.true_alpha = alpha;
      if (sweep) {
        job.dir /= std::string(StrategyName(kind)) + "_alpha" + AlphaTag(alpha);
      }
      job.scenario.Validate();
      jobs.push_back(std::move(job));
    }
  }
  return jobs;
}

// Runs one job and writes its outputs; returns the number of belief resets.
inline int ExecuteJob(const RunJob& job, bool plots) {
  const EpisodeResult result = RunEpisode(job.scenario);
  std::filesystem::create_directories(job.dir);
  auto open = [&](const char* name) {
    std::ofstream out(job.dir / name, std::ios::binary);
    if (!out) throw InputError("cannot write " + (job.dir / name).string());
    return out;
  };
  {
    auto out = open("trace.csv");
    WriteTraceCsv(out, result);
  }
  {
    auto out = open("belief.jsonl");
    WriteBeliefJsonl(out, job.scenario.game, result);
  }
  {
    auto out = open("summary.json");
    out << SummaryToJson(job.scenario, result).dump(2) << '\n';
  }
  if (plots) PlotRun(job.dir);
  return result.summary.belief_resets;
}

// Returns kExitOk, kExitValidation or kExitContradiction.
inline int RunCommand(const RunConfig& config, std::ostream& log) {
  std::vector<RunJob> jobs;
  try {
    jobs = PlanJobs(config);
  } catch (const InputError& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  std::vector<std::future<int>> pending;
  for (const RunJob& job : jobs) {
    pending.push_back(std::async(std::launch::async, ExecuteJob, std::cref(job),
                                 config.plots));
  }
  bool failed = false;
  bool contradicted = false;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    try {
      const int resets = pending[k].get();
      if (resets > 0) {
        log << "warning: " << jobs[k].dir.string() << ": belief reset "
            << resets << " time(s) after contradictory observations\n";
        contradicted = true;
      }
    } catch (const InputError& e) {
      log << "error: " << jobs[k].dir.string() << ": " << e.what() << '\n';
      failed = true;
    }
  }
  if (failed) return kExitValidation;
  return contradicted ? kExitContradiction : kExitOk;
}

inline int PlotCommand(const std::filesystem::path& dir, std::ostream& log) {
  try {
    PlotRun(dir);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace altruism

#endif  // ALTRUISM_CLI_HPP_
