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

#include "smc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smc/error.hpp"

namespace smc {

double log_sum_exp(std::span<const double> log_values) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (log_values.empty()) return kNegInf;
  const double top = *std::max_element(log_values.begin(), log_values.end());
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double v : log_values) acc += std::exp(v - top);
  return top + std::log(acc);
}

double log_mean_exp(std::span<const double> log_values) {
  return log_sum_exp(log_values) - std::log(static_cast<double>(log_values.size()));
}

std::vector<double> normalize_log_weights(std::span<const double> log_weights) {
  const double lse = log_sum_exp(log_weights);
  if (!std::isfinite(lse)) {
    throw DegenerateWeightsError("all particle weights are zero or non-finite", -1);
  }
  std::vector<double> out(log_weights.size());
  std::transform(log_weights.begin(), log_weights.end(), out.begin(),
                 [lse](double lw) { return std::exp(lw - lse); });
  return out;
}

double relative_ess(std::span<const double> log_weights) {
  const double lse = log_sum_exp(log_weights);
  if (!std::isfinite(lse)) return 0.0;
  double sum_sq = 0.0;
  for (double lw : log_weights) {
    const double w = std::exp(lw - lse);
    sum_sq += w * w;
  }
  return 1.0 / (sum_sq * static_cast<double>(log_weights.size()));
}

}  // namespace smc
