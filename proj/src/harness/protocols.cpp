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


#include "smc/harness/protocols.hpp"

#include <cmath>

#include "smc/error.hpp"
#include "smc/harness/build.hpp"

namespace smc::harness {

namespace {

std::int64_t moves(const RunConfig& run, int T) {
  std::int64_t total = 0;
  for (int t = 1; t <= T; ++t) total += run.chain_length(t);
  return total * run.M;
}

std::vector<std::string> estimators_for(const std::string& mode, int dim) {
  std::vector<std::string> out;
  if (mode == "means" || mode == "both") out.push_back("log_z_means");
  if (mode == "medians" || mode == "both") out.push_back("log_z_medians");
  if (mode == "means" || mode == "both") {
    for (int i = 0; i < dim; ++i) out.push_back("moment_mean[" + std::to_string(i) + "]");
  }
  return out;
}

std::vector<int> chain_lengths(const AlgorithmConfig& a, int T) {
  if (a.name != Algorithm::greedy) {
    if (a.P.size() != 1) throw ConfigError("algorithm.P: only greedy takes an array");
    return a.P;
  }
  if (a.P.size() == static_cast<std::size_t>(T) + 1) return a.P;
  if (a.P.size() != 1) {
    throw ConfigError("algorithm.P: greedy needs one value or T + 1 = " + std::to_string(T + 1));
  }
  std::vector<int> out(static_cast<std::size_t>(T) + 1, a.P.front());
  if (a.C && a.P_final) throw ConfigError("algorithm: give C or P_final, not both");
  if (a.C) out.back() = *a.C * a.P.front();
  if (a.P_final) out.back() = *a.P_final;
  return out;
}

Arm make_arm(const std::string& name, const BuiltModel& model, const KernelConfig& kernel,
             Algorithm algorithm, int M, std::vector<int> P, int runs,
             std::vector<std::string> estimators, Execution exec) {
  Arm arm;
  arm.name = name;
  arm.runs = runs;
  arm.estimators = std::move(estimators);
  arm.reference_log_z = model.reference_log_z;
  arm.reference_mean = model.reference_mean;
  arm.run.sequence = model.path;
  arm.run.kernel = build_kernel(kernel, model);
  arm.run.M = M;
  arm.run.P = std::move(P);
  arm.run.algorithm = algorithm;
  arm.run.execution = exec;
  arm.meta.dim = model.dim();
  arm.meta.M = M;
  arm.meta.P = arm.run.P.front();
  arm.meta.J = runs;
  if (model.schedule) {
    arm.meta.T = model.schedule->horizon();
    arm.run.validate();
    arm.nominal_cost = runs * moves(arm.run, arm.meta.T);
  }
  if (arm.run.P.size() > 1) arm.meta.P_final = arm.run.P.back();
  return arm;
}

}  // namespace

BudgetSplit fig1_split(int budget, int T, int C) {
  if (T < 2) throw ConfigError("fig1: needs T >= 2");
  if (C < 1) throw ConfigError("fig1: C must be >= 1");
  BudgetSplit s;
  s.P = budget / (T - 1 + C);
  if (s.P < 1) throw ConfigError("fig1: budget too small for C = " + std::to_string(C));
  s.P_final = C * s.P;
  s.used = s.P_final + (T - 1) * s.P;
  return s;
}

Protocol single_run_protocol(const ExperimentConfig& cfg) {
  Protocol p;
  const BuiltModel model = build_model(cfg.model, cfg.schedule);
  p.notes = model.notes;
  const AlgorithmConfig& a = cfg.algorithm;
  const int runs = a.estimator == "means" ? 1 : a.J;
  auto estimators = estimators_for(a.estimator, model.dim());
  if (!model.schedule) {
    if (a.P.size() != 1) throw ConfigError("adaptive schedule: algorithm.P must be one value");
    Arm arm = make_arm("adaptive", model, cfg.kernel, a.name, a.M, a.P, runs,
                       std::move(estimators), a.execution);
    AdaptiveRunConfig ad;
    ad.path = model.path;
    ad.kernel = arm.run.kernel;
    ad.M = a.M;
    ad.P = a.P.front();
    ad.algorithm = a.name;
    ad.execution = a.execution;
    ad.schedule = cfg.schedule.adaptive;
    arm.adaptive = ad;
    p.arms.push_back(std::move(arm));
  } else {
    const int T = model.schedule->horizon();
    Arm arm = make_arm(to_string(a.name), model, cfg.kernel, a.name, a.M, chain_lengths(a, T),
                       runs, std::move(estimators), a.execution);
    arm.meta.C = a.C;
    p.arms.push_back(std::move(arm));
  }
  p.resolved = {{"arms", p.arms.size()}};
  return p;
}

Protocol fig1_protocol(const ExperimentConfig& cfg) {
  Protocol p;
  const BuiltModel model = build_model(cfg.model, cfg.schedule);
  if (!model.schedule) throw ConfigError("fig1: needs a fixed schedule");
  p.notes = model.notes;
  const int T = model.schedule->horizon();
  Json splits = Json::array();
  for (int C : cfg.fig1.C_values) {
    const BudgetSplit s = fig1_split(cfg.fig1.budget, T, C);
    if (s.used != cfg.fig1.budget) {
      p.notes.push_back("fig1: C = " + std::to_string(C) + " uses " + std::to_string(s.used) +
                        " of budget " + std::to_string(cfg.fig1.budget));
    }
    std::vector<int> P(static_cast<std::size_t>(T) + 1, s.P);
    P.back() = s.P_final;
    std::vector<std::string> est;
    for (int i = 0; i < model.dim(); ++i) est.push_back("moment_mean[" + std::to_string(i) + "]");
    est.push_back("log_z_means");
    Arm arm = make_arm("C=" + std::to_string(C), model, cfg.kernel, Algorithm::greedy,
                       cfg.algorithm.M, std::move(P), 1, std::move(est), Execution::serial);
    arm.meta.C = C;
    p.arms.push_back(std::move(arm));
    splits.push_back({{"C", C}, {"P", s.P}, {"P_final", s.P_final}, {"budget_used", s.used}});
  }
  p.resolved = {{"T", T}, {"lambdas", model.schedule->lambdas()}, {"splits", splits}};
  return p;
}

Protocol fig2_protocol(const ExperimentConfig& cfg) {
  Protocol p;
  const Fig2Config& f = cfg.fig2;
  if (f.J < 1) throw ConfigError("fig2.J: must be >= 1");
  Json dims = Json::array();
  for (int d : f.dims) {
    if (d < 1) throw ConfigError("fig2.dims: must be >= 1");
    const double sd = std::sqrt(static_cast<double>(d));
    const int T = static_cast<int>(std::ceil(f.k_T * sd));
    const int wf_P = static_cast<int>(std::ceil(f.k_P * T * T * d));
    const int std_M = static_cast<int>(std::ceil(f.k_M * T * T));
    const int std_P = static_cast<int>(std::ceil(f.k_Pstd * d));
    for (const auto& [tail, var] :
         {std::pair<std::string, double>{"heavy", f.heavy_var}, {"light", f.light_var}}) {
      ModelConfig m;
      m.family = "gaussian";
      m.dim = d;
      m.base_mean = Eigen::VectorXd::Zero(d);
      m.base_cov = Eigen::MatrixXd::Identity(d, d);
      m.target_mean = Eigen::VectorXd::Constant(d, 0.5);
      m.target_cov = var * Eigen::MatrixXd::Identity(d, d);
      ScheduleConfig s = cfg.schedule;
      s.kind = "equidistant";
      s.T = T;
      const BuiltModel model = build_model(m, s);
      KernelConfig k = cfg.kernel;
      k.kind = KernelKind::rwm;
      k.scale.reset();
      const std::string name = "d=" + std::to_string(d) + "/" + tail;
      // Budget matching: the means estimator gets one run J times as large.
      p.arms.push_back(make_arm(name, model, k, Algorithm::wastefree, f.wf_M, {f.J * wf_P}, 1,
                                {"log_z_means"}, Execution::serial));
      p.arms.push_back(make_arm(name, model, k, Algorithm::wastefree, f.wf_M, {wf_P}, f.J,
                                {"log_z_medians"}, Execution::serial));
      p.arms.push_back(make_arm(name, model, k, Algorithm::standard, f.J * std_M, {std_P}, 1,
                                {"log_z_means"}, Execution::serial));
      p.arms.push_back(make_arm(name, model, k, Algorithm::standard, std_M, {std_P}, f.J,
                                {"log_z_medians"}, Execution::serial));
    }
    dims.push_back({{"d", d},
                    {"T", T},
                    {"wastefree", {{"M", f.wf_M}, {"P", wf_P}, {"J", f.J}}},
                    {"standard", {{"M", std_M}, {"P", std_P}, {"J", f.J}}}});
  }
  p.resolved = {{"dims", dims}};
  return p;
}

Protocol sweep_protocol(const ExperimentConfig& cfg) {
  Protocol p;
  Json base = cfg.resolved;
  base["experiment"] = "single_run";
  base.erase("sweep");
  std::size_t points = 1;
  for (const auto& axis : cfg.sweep) points *= axis.values.size();
  Json grid = Json::array();
  for (std::size_t i = 0; i < points; ++i) {
    Json doc = base;
    Json point = Json::object();
    std::string name;
    std::size_t rest = i;
    // Last axis varies fastest.
    std::vector<std::size_t> idx(cfg.sweep.size());
    for (std::size_t a = cfg.sweep.size(); a-- > 0;) {
      idx[a] = rest % cfg.sweep[a].values.size();
      rest /= cfg.sweep[a].values.size();
    }
    for (std::size_t a = 0; a < cfg.sweep.size(); ++a) {
      const Json& v = cfg.sweep[a].values[idx[a]];
      set_path(doc, cfg.sweep[a].path, v);
      point[cfg.sweep[a].path] = v;
      if (!name.empty()) name += ",";
      name += cfg.sweep[a].path + "=" + v.dump();
    }
    Protocol sub = single_run_protocol(parse_config(doc));
    for (auto& arm : sub.arms) {
      arm.name = name.empty() ? arm.name : name;
      p.arms.push_back(std::move(arm));
    }
    p.notes.insert(p.notes.end(), sub.notes.begin(), sub.notes.end());
    grid.push_back(point);
  }
  p.resolved = {{"grid", grid}};
  return p;
}

}  // namespace smc::harness
