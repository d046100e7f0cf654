// Copyright 2026 The smc-samplers Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smc/harness/config.hpp"
#include "smc/samplers.hpp"

namespace smc::harness {

/// Sizes reported in every result row of an arm.
struct ArmMeta {
  int dim = 0;
  std::optional<int> C;
  int M = 0;
  int P = 0;
  std::optional<int> P_final;
  int J = 1;
  int T = 0;
};

/// One cell of the replicate grid: a run recipe, how many independent runs
/// each replicate needs, and which estimates become result rows.
struct Arm {
  std::string name;
  RunConfig run;
  std::optional<AdaptiveRunConfig> adaptive;
  /// Independent runs per replicate (J for the product of medians).
  int runs = 1;
  /// log_z_means, log_z_medians, moment_mean[i].
  std::vector<std::string> estimators;
  ArmMeta meta;
  std::optional<double> reference_log_z;
  std::optional<std::vector<double>> reference_mean;
  /// Nominal Markov-step budget per replicate: runs * M * (P_1 + ... + P_T).
  std::int64_t nominal_cost = 0;
};

struct Protocol {
  std::vector<Arm> arms;
  /// Resolved protocol constants, recorded in the manifest.
  Json resolved;
  std::vector<std::string> notes;
};

/// Integer split of the greedy budget P_T + (T - 1) P = B with P_T = C P.
struct BudgetSplit {
  int P = 0;
  int P_final = 0;
  int used = 0;
};
BudgetSplit fig1_split(int budget, int T, int C);

Protocol single_run_protocol(const ExperimentConfig& cfg);
Protocol fig1_protocol(const ExperimentConfig& cfg);
Protocol fig2_protocol(const ExperimentConfig& cfg);
/// Cartesian product of the sweep axes, each point a single_run arm.
Protocol sweep_protocol(const ExperimentConfig& cfg);

}  // namespace smc::harness
