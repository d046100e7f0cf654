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
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace smc {

/// Steps needed to reach TV distance xi from an omega-warm start.
using MixingTime = std::function<std::int64_t(double xi, double omega)>;

/// ceil(log(omega / xi) / gamma). Throws DomainError unless 0 < xi <= omega
/// and gamma in (0, 1].
std::int64_t mixing_time_from_gap(double xi, double omega, double gamma);

struct PlanInput {
  double epsilon = 0.1;
  double eta = 0.25;
  int T = 1;
  /// Number of chains, for the plans that fix it.
  int M = 1;
  /// Minimal spectral gap of the kernels.
  std::optional<double> gamma;
  /// Constant with 1 + chi^2(pi_t | pi_{t-1}) <= chi_bar_sq.
  double chi_bar_sq = 2.0;
  /// Overrides the gap-derived mixing time when set.
  MixingTime tau;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
  /// tau(xi, omega), or mixing_time_from_gap with gamma.
  std::int64_t mixing_time(double xi, double omega) const;
  double gap() const;
};

enum class FormulaTag { paper_exact, paper_shape };
std::string to_string(FormulaTag tag);

struct PlanResult {
  /// Plan name, e.g. "wastefree_moments".
  std::string plan;
  std::int64_t M = 1;
  /// One value, or P_0..P_T for the greedy plan.
  std::vector<std::int64_t> P;
  std::int64_t J = 1;
  int T = 1;
  FormulaTag tag = FormulaTag::paper_exact;
  /// Total Markov steps: J * T * M * P, or J * M * (P_1 + ... + P_T) for greedy.
  std::int64_t predicted_cost = 0;
  /// Side conditions and remarks, one per entry.
  std::vector<std::string> notes;
};

/// Standard SMC, moments: M = ceil(log(8T/eta^2) max(18 chi_bar_sq, 1/(2 eps^2))),
/// P = tau(eta / (2MT), 2).
PlanResult plan_standard_moments(const PlanInput& in);

/// Waste-free SMC with fixed M, moments:
/// P = ceil(max(128/gamma log(32MT/eta), 128/(gamma eps^2) log(64T/eta))).
PlanResult plan_wastefree_moments(const PlanInput& in);

/// Greedy waste-free with fixed M: P_t = ceil(128/gamma log(32MT/eta)) for t < T,
/// P_T = ceil(128/(gamma eps^2) log(64T/eta)).
PlanResult plan_greedy_moments(const PlanInput& in);

/// Waste-free SMC, normalizing constant within eps with probability 3/4:
/// M = 1, P = ceil(2560 T^3/(gamma eps^2)), eps in (0, 2].
PlanResult plan_wastefree_z(const PlanInput& in);

/// J = 12 ceil(log(T/eta)) + 1 waste-free runs combined by product of medians:
/// M = 1, P = ceil(2560 T^2/(eps^2 gamma)).
PlanResult plan_medians_z(const PlanInput& in);

/// Number of product-of-medians replicates, 12 ceil(log(T/eta)) + 1.
std::int64_t median_replicates(int T, double eta);

enum class ZVariant { means, medians };

/// Standard SMC, normalizing constant. Means: M = ceil(64 T^3/eps^2),
/// P = tau(1/(MT), 2). Medians: M = ceil(c T^2/eps^2) with the same P and J
/// replicates; c is not given by the theory (default 64).
PlanResult plan_standard_z(const PlanInput& in, ZVariant variant, double medians_c = 64.0);

}  // namespace smc
