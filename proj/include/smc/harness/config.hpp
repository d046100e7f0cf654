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

#include <Eigen/Dense>
#include "json.hpp"

#include "smc/kernels.hpp"
#include "smc/samplers.hpp"
#include "smc/schedule.hpp"

namespace smc::harness {

using Json = nlohmann::json;

enum class Experiment { single_run, fig1, fig2, sweep, plan };
std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

struct ComponentConfig {
  double weight = 1.0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

struct ModelConfig {
  /// gaussian, gaussian_mixture or product_logcosh.
  std::string family = "gaussian";
  int dim = 2;
  Eigen::VectorXd base_mean;
  Eigen::MatrixXd base_cov;
  Eigen::VectorXd target_mean;
  Eigen::MatrixXd target_cov;
  std::vector<ComponentConfig> components;
  double a = 1.0;
  double b = 0.0;
  std::optional<Curvature> curvature;
};

struct ScheduleConfig {
  /// geometric, equidistant, adaptive or linear.
  std::string kind = "geometric";
  std::optional<double> c;  // unset: default_c(d)
  std::optional<double> lambda0;
  int T = 10;
  double delta = 1.0;
  AdaptiveOptions adaptive;
  /// Repeat lambda = 1 once more so that pi_{T-1} is already the target.
  bool duplicate_final = false;
};

struct KernelConfig {
  KernelKind kind = KernelKind::rwm;
  std::optional<double> scale;  // RWM, unset: 2.38 / sqrt(d)
  std::optional<double> h;      // MALA, unset: default_mala_step
  std::optional<double> rho;    // pCN, unset: rho(lambda_{t-1})
  double gamma = 0.5;           // independence mixture
};

struct AlgorithmConfig {
  Algorithm name = Algorithm::wastefree;
  int M = 100;
  std::vector<int> P{10};
  std::optional<int> C;
  std::optional<int> P_final;
  int J = 1;
  /// means, medians or both.
  std::string estimator = "means";
  Execution execution = Execution::serial;
};

struct ReplicationConfig {
  int n_seeds = 1;
  std::uint64_t master_seed = 0;
};

struct OutputConfig {
  std::string directory = "results";
};

struct Fig1Config {
  std::vector<int> C_values{1, 2, 4, 8, 16, 32};
  /// B in P_T + (T - 1) P = B.
  int budget = 400;
};

struct Fig2Config {
  std::vector<int> dims{2, 4, 8, 16};
  double heavy_var = 2.0;
  double light_var = 0.5;
  /// T = ceil(k_T sqrt(d)).
  double k_T = 1.0;
  /// Waste-free: M = wf_M, P = ceil(k_P T^2 d).
  int wf_M = 20;
  double k_P = 1.0;
  /// Standard: M = ceil(k_M T^2), P = ceil(k_Pstd d).
  double k_M = 10.0;
  double k_Pstd = 2.0;
  int J = 10;
};

struct SweepAxis {
  /// Dotted path into the config, e.g. "algorithm.P".
  std::string path;
  std::vector<Json> values;
};

struct PlanConfig {
  std::vector<std::string> plans{"standard_moments", "wastefree_moments", "greedy_moments",
                                 "wastefree_z",      "medians_z",         "standard_z_means",
                                 "standard_z_medians"};
  std::vector<double> epsilon{0.1};
  std::vector<double> eta{0.25};
  std::vector<int> T{10};
  std::vector<int> M{1};
  std::vector<double> gamma{0.1};
  std::vector<double> chi_bar_sq{2.0};
  double medians_c = 64.0;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::single_run;
  ModelConfig model;
  ScheduleConfig schedule;
  KernelConfig kernel;
  AlgorithmConfig algorithm;
  ReplicationConfig replication;
  OutputConfig output;
  Fig1Config fig1;
  Fig2Config fig2;
  std::vector<SweepAxis> sweep;
  PlanConfig plan;
  /// Fully resolved document (defaults applied); the source of the hash.
  Json resolved;
};

/// Built-in defaults for an experiment kind, as a JSON document.
Json default_config(Experiment e, bool paper_scale = false);

/// Validates `doc` against the schema (unknown keys are rejected), applies
/// defaults for its experiment, and parses it. Throws ConfigError.
ExperimentConfig parse_config(const Json& doc, bool paper_scale = false);
ExperimentConfig load_config(const std::string& path, bool paper_scale = false);

/// FNV-1a of the canonical resolved document, as 16 hex digits.
std::string config_hash(const Json& resolved);

/// Sets a dotted path inside a document (used by sweeps).
void set_path(Json& doc, const std::string& dotted, const Json& value);

}  // namespace smc::harness
