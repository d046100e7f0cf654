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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smc/harness/config.hpp"
#include "smc/model.hpp"
#include "smc/oracle.hpp"
#include "smc/samplers.hpp"

namespace smc::harness {

/// Everything needed to run a configured model, plus ground truth when known.
struct BuiltModel {
  std::shared_ptr<const GeometricPath> path;
  std::optional<GaussianOracle> oracle;
  Curvature curvature;
  /// Unset for adaptive schedules (exponents are chosen during the run).
  std::optional<Schedule> schedule;
  /// log Z_T, i.e. log of the integral of exp(-U).
  std::optional<double> reference_log_z;
  /// E[x] under the target.
  std::optional<std::vector<double>> reference_mean;
  std::vector<std::string> notes;

  int dim() const { return path->dim(); }
};

/// Curvature of V = U + log q when it can be read off the model, else the
/// configured one. Throws ConfigError when neither is available.
Curvature resolve_curvature(const ModelConfig& model);

Schedule build_schedule(const ScheduleConfig& cfg, const Curvature& curv, int dim);
BuiltModel build_model(const ModelConfig& model, const ScheduleConfig& schedule);

/// Per-iteration kernel choice; "auto" tunables are resolved here.
KernelFactory build_kernel(const KernelConfig& cfg, const BuiltModel& model);

}  // namespace smc::harness
