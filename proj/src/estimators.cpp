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


#include "smc/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "smc/error.hpp"
#include "smc/weights.hpp"

namespace smc {

namespace {

void check_values(std::span<const double> values, const char* who) {
  if (values.empty()) throw ConfigError(std::string(who) + ": empty input");
  for (double v : values) {
    if (std::isnan(v)) throw DomainError(std::string(who) + ": NaN input");
  }
}

}  // namespace

double median_rule(std::span<const double> values) {
  check_values(values, "median_rule");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto J = static_cast<std::ptrdiff_t>(sorted.size());
  for (double x : values) {
    const auto le = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    const auto ge = sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), x);
    if (2 * le >= J && 2 * ge >= J) return x;
  }
  throw DomainError("median_rule: no index satisfies the median conditions");
}

double conventional_median(std::span<const double> values) {
  check_values(values, "conventional_median");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

std::string MedianSpec::validate() const {
  if (J < 1) throw ConfigError("median: J must be >= 1");
  if (J % 2 == 0) return "median: even J = " + std::to_string(J) + "; odd J is recommended";
  return {};
}

double moment_estimate(const ParticleCloud& cloud, const std::function<double(Point)>& f) {
  if (cloud.size() == 0) throw ConfigError("moment_estimate: empty pool");
  double sum = 0.0;
  for (std::size_t n = 0; n < cloud.size(); ++n) {
    const double v = f(cloud.particle(n));
    if (!std::isfinite(v)) {
      throw DomainError("moment_estimate: non-finite f at particle " + std::to_string(n));
    }
    sum += v;
  }
  return sum / static_cast<double>(cloud.size());
}

std::vector<double> moment_estimate_mean(const ParticleCloud& cloud) {
  std::vector<double> out(static_cast<std::size_t>(cloud.dim));
  for (int i = 0; i < cloud.dim; ++i) {
    out[static_cast<std::size_t>(i)] =
        moment_estimate(cloud, [i](Point x) { return x[static_cast<std::size_t>(i)]; });
  }
  return out;
}

double weighted_moment_estimate(const ParticleCloud& cloud,
                                const std::function<double(Point)>& f) {
  const auto w = cloud.normalized_weights();
  double sum = 0.0;
  for (std::size_t n = 0; n < cloud.size(); ++n) {
    if (w[n] == 0.0) continue;
    const double v = f(cloud.particle(n));
    if (!std::isfinite(v)) {
      throw DomainError("weighted_moment_estimate: non-finite f at particle " + std::to_string(n));
    }
    sum += w[n] * v;
  }
  return sum;
}

std::string to_string(ZKind k) {
  return k == ZKind::product_of_means ? "product_of_means" : "product_of_medians";
}

ZEstimate z_product_of_means(const RunRecord& record) {
  if (!record.ok()) {
    throw DegenerateWeightsError("z_product_of_means: " + record.abort_reason, *record.aborted_at);
  }
  ZEstimate z;
  z.kind = ZKind::product_of_means;
  std::vector<double> row;
  row.reserve(record.iterations.size());
  double acc = 0.0;
  for (const auto& it : record.iterations) {
    row.push_back(it.log_ratio);
    acc += it.log_ratio;
  }
  z.log_value = acc;
  z.log_ratios.push_back(std::move(row));
  return z;
}

ZEstimate z_product_of_medians(std::vector<std::vector<double>> log_ratio_matrix) {
  if (log_ratio_matrix.empty()) throw ConfigError("z_product_of_medians: J must be >= 1");
  const std::size_t width = log_ratio_matrix.front().size();
  for (const auto& row : log_ratio_matrix) {
    if (row.size() != width) throw ConfigError("z_product_of_medians: ragged ratio matrix");
  }
  ZEstimate z;
  z.kind = ZKind::product_of_medians;
  std::vector<double> column(log_ratio_matrix.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < width; ++t) {
    for (std::size_t j = 0; j < column.size(); ++j) column[j] = log_ratio_matrix[j][t];
    acc += median_rule(column);
  }
  z.log_value = acc;
  z.log_ratios = std::move(log_ratio_matrix);
  return z;
}

ZEstimate z_product_of_medians(std::span<const RunRecord> runs) {
  std::vector<std::vector<double>> matrix;
  matrix.reserve(runs.size());
  for (std::size_t j = 0; j < runs.size(); ++j) {
    if (!runs[j].ok()) {
      throw DegenerateWeightsError("z_product_of_medians: run " + std::to_string(j) + " aborted (" +
                                       runs[j].abort_reason + ")",
                                   *runs[j].aborted_at);
    }
    matrix.push_back(z_product_of_means(runs[j]).log_ratios.front());
  }
  return z_product_of_medians(std::move(matrix));
}

}  // namespace smc
