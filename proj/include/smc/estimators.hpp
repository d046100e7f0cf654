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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "smc/samplers.hpp"

namespace smc {

/// Median rule: x_i for the smallest index i with #{j : x_j <= x_i} >= J/2
/// and #{j : x_j >= x_i} >= J/2. Always returns an element of the input.
double median_rule(std::span<const double> values);

/// Midpoint median (mean of the two central order statistics for even J).
/// For comparison only; the product-of-medians estimator uses median_rule.
double conventional_median(std::span<const double> values);

struct MedianSpec {
  int J = 1;
  /// Throws ConfigError for J < 1; returns a warning for even J.
  std::string validate() const;
};

/// Unweighted mean of f over the final pool. A non-finite f value throws
/// DomainError naming the particle index.
double moment_estimate(const ParticleCloud& cloud, const std::function<double(Point)>& f);
/// Coordinate-wise means of the final pool.
std::vector<double> moment_estimate_mean(const ParticleCloud& cloud);
/// Self-normalized weighted mean. Not part of any guarantee; diagnostics only.
double weighted_moment_estimate(const ParticleCloud& cloud, const std::function<double(Point)>& f);

enum class ZKind { product_of_means, product_of_medians };
std::string to_string(ZKind k);

struct ZEstimate {
  double log_value = 0.0;
  ZKind kind = ZKind::product_of_means;
  /// Means: log pi_{t-1}-hat(G_t) for t = 0..T. Medians: J rows of T + 1 values.
  std::vector<std::vector<double>> log_ratios;
};

/// log Z_T-hat = sum_t log-mean-exp of the t-th weights; bit-identical to
/// record.log_z. Throws DegenerateWeightsError for an aborted run.
ZEstimate z_product_of_means(const RunRecord& record);

/// Per-t median_rule of the J ratios, multiplied over t. Works on log ratios:
/// log is monotone, so log(median(r)) = median(log r).
ZEstimate z_product_of_medians(std::vector<std::vector<double>> log_ratio_matrix);
/// Same, from J complete runs. Throws DegenerateWeightsError if any run aborted.
ZEstimate z_product_of_medians(std::span<const RunRecord> runs);

}  // namespace smc
