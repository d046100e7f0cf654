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


#include "smc/planner.hpp"

#include <algorithm>
#include <cmath>

#include "smc/error.hpp"

namespace smc {

namespace {

std::int64_t ceil_int(double x, const char* what) {
  const double c = std::ceil(x);
  if (!std::isfinite(c) || c > 9.0e18 || c < -9.0e18) {
    throw ConfigError(std::string(what) + ": bound is not representable");
  }
  return static_cast<std::int64_t>(c);
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ConfigError("planner: cost overflows int64");
  return out;
}

std::int64_t constant_cost(const PlanResult& r) {
  return mul(mul(mul(r.J, r.T), r.M), r.P.front());
}

}  // namespace

std::int64_t mixing_time_from_gap(double xi, double omega, double gamma) {
  if (!(xi > 0.0) || !(xi <= omega)) throw DomainError("mixing_time_from_gap: need 0 < xi <= omega");
  if (!(gamma > 0.0) || !(gamma <= 1.0)) {
    throw DomainError("mixing_time_from_gap: gamma must lie in (0, 1]");
  }
  return ceil_int(std::log(omega / xi) / gamma, "mixing_time_from_gap");
}

void PlanInput::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("plan: epsilon must be > 0");
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("plan: eta must lie in (0, 1)");
  if (T < 1) throw ConfigError("plan: T must be >= 1");
  if (M < 1) throw ConfigError("plan: M must be >= 1");
  if (gamma && !(*gamma > 0.0 && *gamma <= 1.0)) throw ConfigError("plan: gamma must lie in (0, 1]");
  if (!(chi_bar_sq >= 1.0)) throw ConfigError("plan: chi_bar_sq must be >= 1");
}

std::int64_t PlanInput::mixing_time(double xi, double omega) const {
  if (tau) return tau(xi, omega);
  if (!gamma) throw ConfigError("plan: needs gamma or a mixing-time function");
  return mixing_time_from_gap(xi, omega, *gamma);
}

double PlanInput::gap() const {
  if (!gamma) throw ConfigError("plan: spectral gap gamma is required");
  return *gamma;
}

std::string to_string(FormulaTag tag) {
  return tag == FormulaTag::paper_exact ? "paper-exact" : "paper-shape";
}

PlanResult plan_standard_moments(const PlanInput& in) {
  in.validate();
  PlanResult r;
  r.plan = "standard_moments";
  r.T = in.T;
  const double T = in.T;
  r.M = ceil_int(std::log(8.0 * T / (in.eta * in.eta)) *
                     std::max(18.0 * in.chi_bar_sq, 1.0 / (2.0 * in.epsilon * in.epsilon)),
                 "standard_moments M");
  r.P = {in.mixing_time(in.eta / (2.0 * static_cast<double>(r.M) * T), 2.0)};
  if (!in.tau) r.notes.push_back("tau synthesized from gamma with warmness 2");
  r.predicted_cost = constant_cost(r);
  return r;
}

PlanResult plan_wastefree_moments(const PlanInput& in) {
  in.validate();
  const double g = in.gap();
  PlanResult r;
  r.plan = "wastefree_moments";
  r.T = in.T;
  r.M = in.M;
  const double T = in.T;
  const double mixing = 128.0 / g * std::log(32.0 * in.M * T / in.eta);
  const double accuracy = 128.0 / (g * in.epsilon * in.epsilon) * std::log(64.0 * T / in.eta);
  r.P = {ceil_int(std::max(mixing, accuracy), "wastefree_moments P")};
  r.notes.push_back(mixing >= accuracy ? "mixing branch dominates" : "accuracy branch dominates");
  r.predicted_cost = constant_cost(r);
  return r;
}

PlanResult plan_greedy_moments(const PlanInput& in) {
  in.validate();
  const double g = in.gap();
  PlanResult r;
  r.plan = "greedy_moments";
  r.T = in.T;
  r.M = in.M;
  const double T = in.T;
  const auto early = ceil_int(128.0 / g * std::log(32.0 * in.M * T / in.eta), "greedy P_t");
  const auto last = ceil_int(128.0 / (g * in.epsilon * in.epsilon) * std::log(64.0 * T / in.eta),
                             "greedy P_T");
  r.P.assign(static_cast<std::size_t>(in.T) + 1, early);
  r.P.back() = last;
  // Markov moves happen at t = 1..T; P_0 only sizes the initial pool.
  std::int64_t moves = 0;
  for (std::size_t t = 1; t < r.P.size(); ++t) moves += r.P[t];
  r.predicted_cost = mul(mul(r.J, r.M), moves);
  return r;
}

PlanResult plan_wastefree_z(const PlanInput& in) {
  in.validate();
  if (!(in.epsilon <= 2.0)) throw ConfigError("wastefree_z: epsilon must lie in (0, 2]");
  const double g = in.gap();
  PlanResult r;
  r.plan = "wastefree_z";
  r.T = in.T;
  r.M = 1;
  const double T = in.T;
  r.P = {ceil_int(2560.0 * T * T * T / (g * in.epsilon * in.epsilon), "wastefree_z P")};
  const auto side = ceil_int(32.0 * std::log(64.0 * in.M * T) / g, "wastefree_z side condition");
  r.notes.push_back("with M = " + std::to_string(in.M) + " chains: P >= " + std::to_string(side) +
                    (r.P.front() >= side ? " (met)" : " (not met)"));
  r.predicted_cost = constant_cost(r);
  return r;
}

std::int64_t median_replicates(int T, double eta) {
  return 12 * ceil_int(std::log(static_cast<double>(T) / eta), "median replicates") + 1;
}

PlanResult plan_medians_z(const PlanInput& in) {
  in.validate();
  const double g = in.gap();
  PlanResult r;
  r.plan = "medians_z";
  r.T = in.T;
  r.M = 1;
  r.J = median_replicates(in.T, in.eta);
  const double T = in.T;
  r.P = {ceil_int(2560.0 * T * T / (in.epsilon * in.epsilon * g), "medians_z P")};
  r.predicted_cost = constant_cost(r);
  return r;
}

PlanResult plan_standard_z(const PlanInput& in, ZVariant variant, double medians_c) {
  in.validate();
  if (!(medians_c > 0.0)) throw ConfigError("standard_z: medians constant must be > 0");
  PlanResult r;
  r.T = in.T;
  const double T = in.T;
  const double e2 = in.epsilon * in.epsilon;
  if (variant == ZVariant::means) {
    r.plan = "standard_z_means";
    r.M = ceil_int(64.0 * T * T * T / e2, "standard_z M");
  } else {
    r.plan = "standard_z_medians";
    r.tag = FormulaTag::paper_shape;
    r.M = ceil_int(medians_c * T * T / e2, "standard_z M");
    r.J = median_replicates(in.T, in.eta);
    r.notes.push_back("M constant c = " + std::to_string(medians_c) + " is implementer-chosen");
  }
  r.P = {in.mixing_time(1.0 / (static_cast<double>(r.M) * T), 2.0)};
  r.notes.push_back("MALA pairing: tau = O(kappa sqrt(d) polylog) gives total cost O~(d^2 kappa^4 eps^-2)");
  r.predicted_cost = constant_cost(r);
  return r;
}

}  // namespace smc
