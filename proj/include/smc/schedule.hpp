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

#include <optional>
#include <span>
#include <vector>

namespace smc {

/// Tempering exponents lambda_0 <= ... <= lambda_T = 1. lambda_{-1} = 0 is
/// implicit: it stands for the base measure.
class Schedule {
 public:
  Schedule() = default;
  /// Validates monotonicity, range and the terminal value 1.
  explicit Schedule(std::vector<double> lambdas);

  /// Number of targets minus one, i.e. the index of the last target.
  int horizon() const noexcept { return static_cast<int>(lambdas_.size()) - 1; }
  /// lambda_t for t in [-1, T].
  double lambda(int t) const;
  double step(int t) const { return lambda(t) - lambda(t - 1); }
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }

  /// Prefix lambda_0..lambda_t, used while an adaptive schedule is still growing.
  static Schedule partial(std::vector<double> lambdas);

 private:
  std::vector<double> lambdas_;
};

/// Curvature constants of a geometric path: Hess(Q + l V) >= (alpha_Q + l alpha_V) I
/// and Hess(V) <= beta_V I.
struct Curvature {
  double alpha_Q = 1.0;
  double alpha_V = 1.0;
  double beta_V = 1.0;
};

/// c = 1 / (8 sqrt(1 + 24/sqrt(d))): the step constant that keeps 1 + chi^2 <= 2.
double default_c(int dim);

/// Largest admissible increment c (alpha_Q + lambda alpha_V) / (beta_V sqrt d).
double max_tempering_increment(const Curvature& curv, int dim, double c, double lambda_prev);

/// Equality case of the increment rule from lambda_{-1} = 0, in closed form:
/// lambda_t = (alpha_Q / alpha_V) ((1 + c alpha_V / (beta_V sqrt d))^(t+1) - 1), capped at 1. alpha_Q == 0 requires lambda0 and
/// iterates the gap recursion from it.
Schedule geometric_schedule(const Curvature& curv, int dim, double c,
                            std::optional<double> lambda0 = std::nullopt);

/// lambda_t = (t + 1) / (T + 1), t = 0..T.
Schedule equidistant_schedule(int horizon);

/// lambda_t = min(1, lambda_{t-1} + delta / sqrt(d)).
Schedule linear_schedule(double delta, int dim);

struct AdaptiveStep {
  double lambda = 1.0;
  double ress = 1.0;
  int bisection_iterations = 0;
  /// Set when even the minimal increment falls below the target rESS.
  bool fallback = false;
};

struct AdaptiveOptions {
  double target_ress = 0.5;
  double min_step = 1e-6;
  double tolerance = 1e-10;
  int max_iterations = 100;
};

/// Next exponent lambda_prev + delta with rESS(exp(-delta V_i)) = target,
/// found by bisection over delta in (0, 1 - lambda_prev].
AdaptiveStep adaptive_ess_step(std::span<const double> potential_values, double lambda_prev,
                               const AdaptiveOptions& options);

}  // namespace smc
