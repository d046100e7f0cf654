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

#include <span>
#include <vector>

namespace smc {

/// log(sum(exp(v))). Returns -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> log_values);

/// log of the arithmetic mean of exp(v).
double log_mean_exp(std::span<const double> log_values);

/// Normalized weights W_n = w_n / sum(w) from log-weights.
/// Throws DegenerateWeightsError when every weight is zero.
std::vector<double> normalize_log_weights(std::span<const double> log_weights);

/// (sum w)^2 / (N sum w^2), in (0, 1].
double relative_ess(std::span<const double> log_weights);

}  // namespace smc
