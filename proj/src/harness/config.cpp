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


#include "smc/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "smc/error.hpp"

namespace smc::harness {

namespace {

using Keys = std::set<std::string>;

void check_keys(const Json& obj, const Keys& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

void check_schema(const Json& doc) {
  check_keys(doc,
             {"experiment", "model", "schedule", "kernel", "algorithm", "replication", "output",
              "fig1", "fig2", "sweep", "plan"},
             "config");
  if (doc.contains("model")) {
    const Json& m = doc["model"];
    check_keys(m, {"family", "dim", "base", "target", "components", "a", "b", "curvature"},
               "model");
    for (const char* g : {"base", "target"}) {
      if (m.contains(g)) check_keys(m[g], {"mean", "cov"}, std::string("model.") + g);
    }
    if (m.contains("components")) {
      if (!m["components"].is_array()) throw ConfigError("model.components: expected an array");
      for (const auto& c : m["components"]) {
        check_keys(c, {"weight", "mean", "cov"}, "model.components[]");
      }
    }
    if (m.contains("curvature") && !m["curvature"].is_null()) {
      check_keys(m["curvature"], {"alpha_Q", "alpha_V", "beta_V"}, "model.curvature");
    }
  }
  if (doc.contains("schedule")) {
    check_keys(doc["schedule"],
               {"kind", "c", "lambda0", "T", "delta", "target_ress", "min_step", "tolerance",
                "max_iterations", "duplicate_final"},
               "schedule");
  }
  if (doc.contains("kernel")) {
    check_keys(doc["kernel"], {"kind", "scale", "h", "rho", "gamma"}, "kernel");
  }
  if (doc.contains("algorithm")) {
    check_keys(doc["algorithm"],
               {"name", "M", "P", "C", "P_final", "J", "estimator", "execution"}, "algorithm");
  }
  if (doc.contains("replication")) {
    check_keys(doc["replication"], {"n_seeds", "master_seed"}, "replication");
  }
  if (doc.contains("output")) check_keys(doc["output"], {"directory"}, "output");
  if (doc.contains("fig1")) check_keys(doc["fig1"], {"C_values", "budget"}, "fig1");
  if (doc.contains("fig2")) {
    check_keys(doc["fig2"],
               {"dims", "heavy_var", "light_var", "k_T", "wf_M", "k_P", "k_M", "k_Pstd", "J"},
               "fig2");
  }
  if (doc.contains("sweep")) {
    check_keys(doc["sweep"], {"axes"}, "sweep");
    if (doc["sweep"].contains("axes")) {
      const Json& axes = doc["sweep"]["axes"];
      if (!axes.is_object()) throw ConfigError("sweep.axes: expected an object");
      for (const auto& [path, values] : axes.items()) {
        if (!values.is_array() || values.empty()) {
          throw ConfigError("sweep.axes." + path + ": expected a non-empty array");
        }
      }
    }
  }
  if (doc.contains("plan")) {
    check_keys(doc["plan"],
               {"plans", "epsilon", "eta", "T", "M", "gamma", "chi_bar_sq", "medians_c"}, "plan");
  }
}

template <typename T>
T get(const Json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

std::optional<double> get_auto(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) return std::nullopt;
  const Json& v = obj[key];
  if (v.is_string()) {
    if (v.get<std::string>() == "auto") return std::nullopt;
    throw ConfigError(where + "." + key + ": expected a number or \"auto\"");
  }
  return get<double>(obj, key, where);
}

Eigen::VectorXd parse_vector(const Json& v, int dim, const std::string& where) {
  if (v.is_number()) return Eigen::VectorXd::Constant(dim, v.get<double>());
  if (!v.is_array() || static_cast<int>(v.size()) != dim) {
    throw ConfigError(where + ": expected a number or an array of " + std::to_string(dim) +
                      " numbers");
  }
  Eigen::VectorXd out(dim);
  for (int i = 0; i < dim; ++i) out[i] = v[static_cast<std::size_t>(i)].get<double>();
  return out;
}

// Number: variance * I. Flat array: diagonal. Array of arrays: full matrix.
Eigen::MatrixXd parse_cov(const Json& v, int dim, const std::string& where) {
  if (v.is_number()) return v.get<double>() * Eigen::MatrixXd::Identity(dim, dim);
  if (!v.is_array() || static_cast<int>(v.size()) != dim) {
    throw ConfigError(where + ": expected a number, a diagonal or a " + std::to_string(dim) +
                      "x" + std::to_string(dim) + " matrix");
  }
  if (v[0].is_number()) return parse_vector(v, dim, where).asDiagonal();
  Eigen::MatrixXd out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const Json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ConfigError(where + ": row " + std::to_string(i) + " has the wrong length");
    }
    for (int j = 0; j < dim; ++j) out(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return out;
}

ModelConfig parse_model(const Json& m) {
  ModelConfig c;
  c.family = get<std::string>(m, "family", "model");
  if (c.family != "gaussian" && c.family != "gaussian_mixture" && c.family != "product_logcosh") {
    throw ConfigError("model.family: unknown family '" + c.family + "'");
  }
  c.dim = get<int>(m, "dim", "model");
  if (c.dim < 1) throw ConfigError("model.dim: must be >= 1");
  c.base_mean = parse_vector(m["base"]["mean"], c.dim, "model.base.mean");
  c.base_cov = parse_cov(m["base"]["cov"], c.dim, "model.base.cov");
  if (c.family == "gaussian") {
    c.target_mean = parse_vector(m["target"]["mean"], c.dim, "model.target.mean");
    c.target_cov = parse_cov(m["target"]["cov"], c.dim, "model.target.cov");
  } else if (c.family == "gaussian_mixture") {
    if (!m.contains("components") || m["components"].empty()) {
      throw ConfigError("model.components: a mixture needs at least one component");
    }
    for (const auto& comp : m["components"]) {
      ComponentConfig cc;
      cc.weight = get<double>(comp, "weight", "model.components[]");
      cc.mean = parse_vector(comp.at("mean"), c.dim, "model.components[].mean");
      cc.cov = parse_cov(comp.at("cov"), c.dim, "model.components[].cov");
      c.components.push_back(std::move(cc));
    }
  } else {
    c.a = get<double>(m, "a", "model");
    c.b = get<double>(m, "b", "model");
  }
  if (m.contains("curvature") && !m["curvature"].is_null()) {
    const Json& k = m["curvature"];
    c.curvature = Curvature{get<double>(k, "alpha_Q", "model.curvature"),
                            get<double>(k, "alpha_V", "model.curvature"),
                            get<double>(k, "beta_V", "model.curvature")};
  }
  return c;
}

ScheduleConfig parse_schedule(const Json& s) {
  ScheduleConfig c;
  c.kind = get<std::string>(s, "kind", "schedule");
  if (c.kind != "geometric" && c.kind != "equidistant" && c.kind != "adaptive" &&
      c.kind != "linear") {
    throw ConfigError("schedule.kind: unknown kind '" + c.kind + "'");
  }
  c.c = get_auto(s, "c", "schedule");
  if (s.contains("lambda0") && !s["lambda0"].is_null()) {
    c.lambda0 = get<double>(s, "lambda0", "schedule");
  }
  c.T = get<int>(s, "T", "schedule");
  c.delta = get<double>(s, "delta", "schedule");
  c.adaptive.target_ress = get<double>(s, "target_ress", "schedule");
  c.adaptive.min_step = get<double>(s, "min_step", "schedule");
  c.adaptive.tolerance = get<double>(s, "tolerance", "schedule");
  c.adaptive.max_iterations = get<int>(s, "max_iterations", "schedule");
  c.duplicate_final = get<bool>(s, "duplicate_final", "schedule");
  return c;
}

KernelConfig parse_kernel(const Json& k) {
  KernelConfig c;
  c.kind = kernel_kind_from_string(get<std::string>(k, "kind", "kernel"));
  c.scale = get_auto(k, "scale", "kernel");
  c.h = get_auto(k, "h", "kernel");
  c.rho = get_auto(k, "rho", "kernel");
  c.gamma = get<double>(k, "gamma", "kernel");
  return c;
}

AlgorithmConfig parse_algorithm(const Json& a) {
  AlgorithmConfig c;
  c.name = algorithm_from_string(get<std::string>(a, "name", "algorithm"));
  c.M = get<int>(a, "M", "algorithm");
  if (a["P"].is_array()) {
    c.P = get<std::vector<int>>(a, "P", "algorithm");
  } else {
    c.P = {get<int>(a, "P", "algorithm")};
  }
  if (a.contains("C") && !a["C"].is_null()) c.C = get<int>(a, "C", "algorithm");
  if (a.contains("P_final") && !a["P_final"].is_null()) {
    c.P_final = get<int>(a, "P_final", "algorithm");
  }
  c.J = get<int>(a, "J", "algorithm");
  if (c.J < 1) throw ConfigError("algorithm.J: must be >= 1");
  c.estimator = get<std::string>(a, "estimator", "algorithm");
  if (c.estimator != "means" && c.estimator != "medians" && c.estimator != "both") {
    throw ConfigError("algorithm.estimator: expected means, medians or both");
  }
  const auto exec = get<std::string>(a, "execution", "algorithm");
  if (exec == "serial") {
    c.execution = Execution::serial;
  } else if (exec == "parallel") {
    c.execution = Execution::parallel;
  } else {
    throw ConfigError("algorithm.execution: expected serial or parallel");
  }
  return c;
}

Json gaussian_model_defaults() {
  return {{"family", "gaussian"},
          {"dim", 2},
          {"base", {{"mean", 0.0}, {"cov", 1.0}}},
          {"target", {{"mean", 0.5}, {"cov", 0.5}}},
          {"components", Json::array()},
          {"a", 1.0},
          {"b", 0.0},
          {"curvature", nullptr}};
}

Json common_defaults() {
  return {{"model", gaussian_model_defaults()},
          {"schedule",
           {{"kind", "geometric"},
            {"c", "auto"},
            {"lambda0", nullptr},
            {"T", 10},
            {"delta", 1.0},
            {"target_ress", 0.5},
            {"min_step", 1e-6},
            {"tolerance", 1e-10},
            {"max_iterations", 100},
            {"duplicate_final", false}}},
          {"kernel",
           {{"kind", "rwm"}, {"scale", "auto"}, {"h", "auto"}, {"rho", "auto"}, {"gamma", 0.5}}},
          {"algorithm",
           {{"name", "wastefree"},
            {"M", 100},
            {"P", 10},
            {"C", nullptr},
            {"P_final", nullptr},
            {"J", 1},
            {"estimator", "means"},
            {"execution", "serial"}}},
          {"replication", {{"n_seeds", 1}, {"master_seed", 0}}},
          {"output", {{"directory", "results"}}}};
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::single_run: return "single_run";
    case Experiment::fig1: return "fig1";
    case Experiment::fig2: return "fig2";
    case Experiment::sweep: return "sweep";
    case Experiment::plan: return "plan";
  }
  return "unknown";
}

Experiment experiment_from_string(const std::string& name) {
  for (auto e : {Experiment::single_run, Experiment::fig1, Experiment::fig2, Experiment::sweep,
                 Experiment::plan}) {
    if (to_string(e) == name) return e;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

Json default_config(Experiment e, bool paper_scale) {
  Json d = common_defaults();
  d["experiment"] = to_string(e);
  switch (e) {
    case Experiment::single_run:
      break;
    case Experiment::sweep:
      d["sweep"] = {{"axes", Json::object()}};
      break;
    case Experiment::fig1:
      d["model"]["family"] = "gaussian_mixture";
      d["model"]["components"] = Json::array(
          {{{"weight", 0.5}, {"mean", {-2.0, -2.0}}, {"cov", 1.0}},
           {{"weight", 0.5}, {"mean", {3.0, 3.0}}, {"cov", 1.0}}});
      d["schedule"]["kind"] = "equidistant";
      d["schedule"]["T"] = 9;
      d["schedule"]["duplicate_final"] = true;
      d["algorithm"]["name"] = "greedy";
      d["algorithm"]["M"] = 20;
      d["replication"]["n_seeds"] = paper_scale ? 40000 : 2000;
      d["fig1"] = {{"C_values", {1, 2, 4, 8, 16, 32}}, {"budget", 400}};
      break;
    case Experiment::fig2:
      d["schedule"]["kind"] = "equidistant";
      d["replication"]["n_seeds"] = paper_scale ? 200 : 50;
      d["fig2"] = {{"dims", {2, 4, 8, 16}}, {"heavy_var", 2.0}, {"light_var", 0.5},
                   {"k_T", 1.0},           {"wf_M", 20},       {"k_P", 1.0},
                   {"k_M", 10.0},          {"k_Pstd", 2.0},    {"J", 10}};
      break;
    case Experiment::plan:
      d["plan"] = {{"plans",
                    {"standard_moments", "wastefree_moments", "greedy_moments", "wastefree_z",
                     "medians_z", "standard_z_means", "standard_z_medians"}},
                   {"epsilon", {0.1}},
                   {"eta", {0.25}},
                   {"T", {10}},
                   {"M", {1}},
                   {"gamma", {0.1}},
                   {"chi_bar_sq", {2.0}},
                   {"medians_c", 64.0}};
      break;
  }
  return d;
}

ExperimentConfig parse_config(const Json& doc, bool paper_scale) {
  check_schema(doc);
  const Experiment kind =
      experiment_from_string(doc.value("experiment", std::string("single_run")));
  Json resolved = default_config(kind, paper_scale);
  resolved.merge_patch(doc);
  if (paper_scale && (kind == Experiment::fig1 || kind == Experiment::fig2)) {
    resolved["replication"]["n_seeds"] = default_config(kind, true)["replication"]["n_seeds"];
  }

  ExperimentConfig c;
  c.experiment = kind;
  c.model = parse_model(resolved["model"]);
  c.schedule = parse_schedule(resolved["schedule"]);
  c.kernel = parse_kernel(resolved["kernel"]);
  c.algorithm = parse_algorithm(resolved["algorithm"]);
  c.replication.n_seeds = get<int>(resolved["replication"], "n_seeds", "replication");
  c.replication.master_seed =
      get<std::uint64_t>(resolved["replication"], "master_seed", "replication");
  if (c.replication.n_seeds < 1) throw ConfigError("replication.n_seeds: must be >= 1");
  c.output.directory = get<std::string>(resolved["output"], "directory", "output");

  if (resolved.contains("fig1")) {
    const Json& f = resolved["fig1"];
    c.fig1.C_values = get<std::vector<int>>(f, "C_values", "fig1");
    c.fig1.budget = get<int>(f, "budget", "fig1");
  }
  if (resolved.contains("fig2")) {
    const Json& f = resolved["fig2"];
    c.fig2.dims = get<std::vector<int>>(f, "dims", "fig2");
    c.fig2.heavy_var = get<double>(f, "heavy_var", "fig2");
    c.fig2.light_var = get<double>(f, "light_var", "fig2");
    c.fig2.k_T = get<double>(f, "k_T", "fig2");
    c.fig2.wf_M = get<int>(f, "wf_M", "fig2");
    c.fig2.k_P = get<double>(f, "k_P", "fig2");
    c.fig2.k_M = get<double>(f, "k_M", "fig2");
    c.fig2.k_Pstd = get<double>(f, "k_Pstd", "fig2");
    c.fig2.J = get<int>(f, "J", "fig2");
  }
  if (resolved.contains("sweep") && resolved["sweep"].contains("axes")) {
    for (const auto& [path, values] : resolved["sweep"]["axes"].items()) {
      c.sweep.push_back({path, std::vector<Json>(values.begin(), values.end())});
    }
  }
  if (resolved.contains("plan")) {
    const Json& p = resolved["plan"];
    c.plan.plans = get<std::vector<std::string>>(p, "plans", "plan");
    c.plan.epsilon = get<std::vector<double>>(p, "epsilon", "plan");
    c.plan.eta = get<std::vector<double>>(p, "eta", "plan");
    c.plan.T = get<std::vector<int>>(p, "T", "plan");
    c.plan.M = get<std::vector<int>>(p, "M", "plan");
    c.plan.gamma = get<std::vector<double>>(p, "gamma", "plan");
    c.plan.chi_bar_sq = get<std::vector<double>>(p, "chi_bar_sq", "plan");
    c.plan.medians_c = get<double>(p, "medians_c", "plan");
  }
  c.resolved = std::move(resolved);
  return c;
}

ExperimentConfig load_config(const std::string& path, bool paper_scale) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc, paper_scale);
}

std::string config_hash(const Json& resolved) {
  const std::string canonical = resolved.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void set_path(Json& doc, const std::string& dotted, const Json& value) {
  Json* node = &doc;
  std::stringstream ss(dotted);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw ConfigError("sweep: empty path");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
  (*node)[parts.back()] = value;
}

}  // namespace smc::harness
