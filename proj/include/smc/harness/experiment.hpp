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
#include <string>
#include <vector>

#include "smc/harness/config.hpp"
#include "smc/harness/output.hpp"
#include "smc/harness/protocols.hpp"
#include "smc/planner.hpp"

namespace smc::harness {

struct RunOptions {
  /// Overrides output.directory when non-empty.
  std::string out_dir;
  /// Replicate-pool threads; 0 keeps the OpenMP default.
  int threads = 0;
  bool write_files = true;
  bool keep_diagnostics = true;
};

struct ExperimentResult {
  std::string config_hash;
  std::vector<ResultRow> rows;
  /// diagnostics.jsonl lines, in grid order.
  std::vector<std::string> diagnostics;
  /// plans.jsonl records for the plan experiment.
  std::vector<Json> plans;
  Json manifest;
};

/// Seed of run j of replicate r. Independent of the arm, so arms are paired
/// by replicate.
std::uint64_t replicate_seed(std::uint64_t master_seed, int replicate, int run);

/// Builds the protocol for cfg.experiment (not plan).
Protocol build_protocol(const ExperimentConfig& cfg);

/// Executes the replicate grid and writes results.csv, diagnostics.jsonl and
/// manifest.json (plan: plans.jsonl and manifest.json).
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Evaluates every configured plan over the parameter grid. Each record holds
/// the inputs and either the result or an error message.
std::vector<Json> run_plans(const PlanConfig& cfg);
Json to_json(const PlanResult& r);

}  // namespace smc::harness
