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

#include "smc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smc/error.hpp"
#include "smc/weights.hpp"

namespace smc {

namespace {

void check_prefix(const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw ConfigError("schedule: empty lambda array");
  double prev = 0.0;
  for (std::size_t t = 0; t < lambdas.size(); ++t) {
    const double l = lambdas[t];
    if (!(l >= 0.0 && l <= 1.0)) {
      throw ConfigError("schedule: lambda_" + std::to_string(t) + " outside [0, 1]");
    }
    if (l < prev) throw ConfigError("schedule: lambdas must be nondecreasing");
    prev = l;
  }
}

// Safety cap on schedule length; far above any desk-scale horizon.
constexpr int kMaxHorizon = 10'000'000;

}  // namespace

Schedule::Schedule(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  check_prefix(lambdas_);
  if (lambdas_.back() != 1.0) throw ConfigError("schedule: final lambda must equal 1");
}

Schedule Schedule::partial(std::vector<double> lambdas) {
  check_prefix(lambdas);
  Schedule s;
  s.lambdas_ = std::move(lambdas);
  return s;
}

double Schedule::lambda(int t) const {
  if (t == -1) return 0.0;
  if (t < -1 || t > horizon()) {
    throw std::out_of_range("schedule: index " + std::to_string(t) + " out of range");
  }
  return lambdas_[static_cast<std::size_t>(t)];
}

double default_c(int dim) {
  if (dim < 1) throw ConfigError("default_c: dimension must be >= 1");
  return 1.0 / (8.0 * std::sqrt(1.0 + 24.0 / std::sqrt(static_cast<double>(dim))));
}

double max_tempering_increment(const Curvature& curv, int dim, double c, double lambda_prev) {
  return c * (curv.alpha_Q + lambda_prev * curv.alpha_V) /
         (curv.beta_V * std::sqrt(static_cast<double>(dim)));
}

Schedule geometric_schedule(const Curvature& curv, int dim, double c,
                            std::optional<double> lambda0) {
  if (dim < 1) throw ConfigError("geometric_schedule: dimension must be >= 1");
  if (!(curv.alpha_V > 0.0)) throw ConfigError("geometric_schedule: alpha_V must be > 0");
  if (!(curv.beta_V > 0.0)) throw ConfigError("geometric_schedule: beta_V must be > 0");
  if (!(curv.alpha_Q >= 0.0)) throw ConfigError("geometric_schedule: alpha_Q must be >= 0");
  if (!(c > 0.0 && c <= 0.125)) throw ConfigError("geometric_schedule: c must lie in (0, 1/8]");

  std::vector<double> lambdas;
  if (curv.alpha_Q == 0.0) {
    if (!lambda0 || !(*lambda0 > 0.0 && *lambda0 <= 1.0)) {
      throw ConfigError("geometric_schedule: alpha_Q = 0 requires lambda0 in (0, 1]");
    }
    // No closed form here; iterate the equality case of the increment rule.
    double l = *lambda0;
    lambdas.push_back(l);
    while (l < 1.0) {
      l = std::min(1.0, l + max_tempering_increment(curv, dim, c, l));
      lambdas.push_back(l);
      if (static_cast<int>(lambdas.size()) > kMaxHorizon) {
        throw ConfigError("geometric_schedule: horizon exceeds safety cap");
      }
    }
    return Schedule(std::move(lambdas));
  }

  // Solution of the recursion lambda_t = lambda_{t-1} + c (alpha_Q + lambda_{t-1} alpha_V) / (beta_V sqrt d)
  // from lambda_{-1} = 0.
  const double log_growth =
      std::log1p(c * curv.alpha_V / (curv.beta_V * std::sqrt(static_cast<double>(dim))));
  const double scale = curv.alpha_Q / curv.alpha_V;
  for (int t = 0;; ++t) {
    // (1 + x)^(t+1) - 1 via expm1 keeps the small-alpha_V limit accurate.
    const double raw = scale * std::expm1(static_cast<double>(t + 1) * log_growth);
    const double l = std::min(1.0, raw);
    lambdas.push_back(l);
    if (l >= 1.0) break;
    if (t > kMaxHorizon) throw ConfigError("geometric_schedule: horizon exceeds safety cap");
  }
  lambdas.back() = 1.0;
  return Schedule(std::move(lambdas));
}

Schedule equidistant_schedule(int horizon) {
  if (horizon < 0) throw ConfigError("equidistant_schedule: T must be >= 0");
  std::vector<double> lambdas(static_cast<std::size_t>(horizon) + 1);
  for (int t = 0; t <= horizon; ++t) {
    lambdas[static_cast<std::size_t>(t)] =
        static_cast<double>(t + 1) / static_cast<double>(horizon + 1);
  }
  lambdas.back() = 1.0;
  return Schedule(std::move(lambdas));
}

Schedule linear_schedule(double delta, int dim) {
  if (!(delta > 0.0)) throw ConfigError("linear_schedule: delta must be > 0");
  if (dim < 1) throw ConfigError("linear_schedule: dimension must be >= 1");
  const double inc = delta / std::sqrt(static_cast<double>(dim));
  std::vector<double> lambdas;
  double l = 0.0;
  do {
    l = std::min(1.0, l + inc);
    lambdas.push_back(l);
    if (static_cast<int>(lambdas.size()) > kMaxHorizon) {
      throw ConfigError("linear_schedule: horizon exceeds safety cap");
    }
  } while (l < 1.0);
  return Schedule(std::move(lambdas));
}

namespace {

double ress_at(std::span<const double> potential, double delta, std::vector<double>& buf) {
  for (std::size_t i = 0; i < potential.size(); ++i) buf[i] = -delta * potential[i];
  return relative_ess(buf);
}

}  // namespace

AdaptiveStep adaptive_ess_step(std::span<const double> potential_values, double lambda_prev,
                               const AdaptiveOptions& options) {
  if (!(options.target_ress > 0.0 && options.target_ress < 1.0)) {
    throw ConfigError("adaptive schedule: target_ress must lie in (0, 1)");
  }
  if (potential_values.empty()) throw ConfigError("adaptive schedule: empty cloud");
  for (double v : potential_values) {
    if (!std::isfinite(v)) throw DomainError("adaptive schedule: non-finite potential value");
  }
  std::vector<double> buf(potential_values.size());
  const double max_delta = 1.0 - lambda_prev;
  AdaptiveStep out;
  if (max_delta <= 0.0) {
    out.lambda = 1.0;
    return out;
  }

  const double ress_full = ress_at(potential_values, max_delta, buf);
  if (ress_full >= options.target_ress) {
    out.lambda = 1.0;
    out.ress = ress_full;
    return out;
  }
  const double min_delta = std::min(options.min_step, max_delta);
  const double ress_min = ress_at(potential_values, min_delta, buf);
  if (ress_min < options.target_ress) {
    out.lambda = std::min(1.0, lambda_prev + min_delta);
    out.ress = ress_min;
    out.fallback = true;
    return out;
  }

  // rESS is nonincreasing in delta; keep lo feasible and hi infeasible.
  double lo = min_delta;
  double hi = max_delta;
  double ress_lo = ress_min;
  int it = 0;
  while (hi - lo > options.tolerance && it < options.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    const double r = ress_at(potential_values, mid, buf);
    if (r >= options.target_ress) {
      lo = mid;
      ress_lo = r;
    } else {
      hi = mid;
    }
    ++it;
  }
  out.lambda = std::min(1.0, lambda_prev + lo);
  out.ress = ress_lo;
  out.bisection_iterations = it;
  return out;
}

}  // namespace smc
