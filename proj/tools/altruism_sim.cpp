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

// altruism_sim: runs lane-merge episodes and renders their traces.
//
//   altruism_sim --scenario scenarios/lane_merge_conflict_free.yaml
//       --strategy passive,reward-gain --alpha 0.2,0.9 --out runs --plots
//   altruism_sim plot runs/reward-gain_alpha0.9

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "altruism/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Active altruism learning in a two-vehicle lane merge"};
  app.set_version_flag("--version", "altruism_sim 1.0");

  altruism::RunConfig config;
  std::vector<std::string> strategies;
  std::vector<double> alphas;
  double lambda = 1.0;
  int steps = 0;
  std::uint64_t seed = 0;
  std::string out_dir = "out";

  app.add_option("--scenario", config.scenario_path, "Scenario YAML file");
  app.add_option("--strategy", strategies,
                 "passive, info-gain or reward-gain; comma list for a sweep")
      ->delimiter(',');
  auto* lambda_opt =
      app.add_option("--lambda", lambda, "Exploration bonus scale");
  app.add_option("--alpha", alphas, "True follower alpha; comma list for a sweep")
      ->delimiter(',');
  auto* steps_opt = app.add_option("--steps", steps, "Episode length");
  auto* seed_opt = app.add_option("--seed", seed, "Run seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--plots", config.plots, "Also write the SVG figures");
  app.add_flag("--conflict-aware", config.conflict_aware,
               "Hedge the leader's reward against role conflict");

  std::string plot_dir;
  auto* plot = app.add_subcommand("plot", "Render SVGs for a run directory");
  plot->add_option("dir", plot_dir, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return altruism::kExitValidation;
  }

  if (*plot) return altruism::PlotCommand(plot_dir, std::cerr);

  if (config.scenario_path.empty()) {
    std::cerr << "error: --scenario is required\n";
    return altruism::kExitValidation;
  }
  try {
    for (const auto& name : strategies) {
      config.strategies.push_back(altruism::ParseStrategyKind(name));
    }
  } catch (const altruism::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return altruism::kExitValidation;
  }
  config.alphas = alphas;
  if (*lambda_opt) config.lambda = lambda;
  if (*steps_opt) config.steps = steps;
  if (*seed_opt) config.seed = seed;
  config.out_dir = out_dir;
  return altruism::RunCommand(config, std::cerr);
}
