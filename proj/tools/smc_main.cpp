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


// smc: command-line front end of the experiment harness.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "smc/error.hpp"
#include "smc/harness/experiment.hpp"

namespace {

using smc::harness::Json;

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_seeds;
  int threads = 0;
  bool paper_scale = false;
  bool no_diagnostics = false;
};

Json read_doc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw smc::ConfigError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw smc::ConfigError(path + ": " + e.what());
  }
}

void print_plans(const std::vector<Json>& plans) {
  std::printf("%-20s %8s %8s %6s %6s %10s %6s %12s %s\n", "plan", "epsilon", "eta", "T", "M_in",
              "gamma", "J", "M", "P / cost");
  for (const auto& p : plans) {
    const Json& in = p["input"];
    const std::string name = p.contains("result") ? p["result"]["plan"].get<std::string>()
                                                  : p["plan"].get<std::string>();
    std::printf("%-20s %8.4g %8.4g %6d %6d %10.4g ", name.c_str(), in["epsilon"].get<double>(),
                in["eta"].get<double>(), in["T"].get<int>(), in["M"].get<int>(),
                in["gamma"].get<double>());
    if (p.contains("error")) {
      std::printf("error: %s\n", p["error"].get<std::string>().c_str());
      continue;
    }
    const Json& r = p["result"];
    const auto& P = r["P"];
    std::string ps = P.size() == 1 ? P[0].dump() : P.front().dump() + ".." + P.back().dump();
    std::printf("%6lld %12lld %s / %lld (%s)\n", r["J"].get<long long>(), r["M"].get<long long>(),
                ps.c_str(), r["predicted_cost"].get<long long>(),
                r["formula_tag"].get<std::string>().c_str());
  }
}

void print_summary(const smc::harness::ExperimentResult& res) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::vector<double>> errors;
  std::map<Key, int> failures;
  std::vector<Key> order;
  for (const auto& r : res.rows) {
    const Key k{r.arm, r.algorithm, r.estimator};
    if (!errors.count(k) && !failures.count(k)) order.push_back(k);
    if (r.status == "ok") {
      errors[k].push_back(std::abs(r.error));
    } else {
      ++failures[k];
    }
  }
  std::printf("%-28s %-10s %-16s %6s %6s %14s\n", "arm", "algorithm", "estimator", "ok", "fail",
              "median|error|");
  for (const auto& k : order) {
    auto& e = errors[k];
    double med = std::nan("");
    if (!e.empty()) {
      std::sort(e.begin(), e.end());
      med = e[e.size() / 2];
    }
    std::printf("%-28s %-10s %-16s %6zu %6d %14.6g\n", std::get<0>(k).c_str(),
                std::get<1>(k).c_str(), std::get<2>(k).c_str(), e.size(), failures[k], med);
  }
}

int execute(Json doc, const std::string& expected, const Flags& f) {
  if (!expected.empty()) {
    if (doc.contains("experiment") && doc["experiment"] != expected) {
      throw smc::ConfigError("config declares experiment '" + doc["experiment"].get<std::string>() +
                             "' but the subcommand is '" + expected + "'");
    }
    doc["experiment"] = expected;
  }
  if (f.seed) doc["replication"]["master_seed"] = *f.seed;
  if (f.n_seeds) doc["replication"]["n_seeds"] = *f.n_seeds;
  const auto cfg = smc::harness::parse_config(doc, f.paper_scale && !f.n_seeds);
  smc::harness::RunOptions opt;
  opt.out_dir = f.out;
  opt.threads = f.threads;
  opt.keep_diagnostics = !f.no_diagnostics;
  const auto res = smc::harness::run_experiment(cfg, opt);
  const std::string dir = f.out.empty() ? cfg.output.directory : f.out;
  if (cfg.experiment == smc::harness::Experiment::plan) {
    print_plans(res.plans);
  } else {
    print_summary(res);
  }
  std::printf("config %s: %zu rows, outputs in %s\n", res.config_hash.c_str(),
              cfg.experiment == smc::harness::Experiment::plan ? res.plans.size() : res.rows.size(),
              dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential Monte Carlo samplers: experiments and parameter planning"};
  app.require_subcommand(1);
  Flags f;
  auto common = [&f](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("config", f.config, "JSON experiment config");
    if (config_required) opt->required();
    sub->add_option("--out", f.out, "Output directory (overrides output.directory)");
    sub->add_option("--seed", f.seed, "Master seed (overrides replication.master_seed)");
    sub->add_option("--n-seeds", f.n_seeds, "Replicate count (overrides replication.n_seeds)");
    sub->add_option("--threads", f.threads, "Replicate-pool threads (0: OpenMP default)");
    sub->add_flag("--no-diagnostics", f.no_diagnostics, "Skip per-iteration diagnostics");
  };
  auto* run = app.add_subcommand("run", "Run the experiment described by a config");
  common(run, true);
  auto* plan = app.add_subcommand("plan", "Evaluate the parameter planner over a grid");
  common(plan, true);
  auto* fig1 = app.add_subcommand("fig1", "Greedy allocation sweep over C");
  common(fig1, false);
  fig1->add_flag("--paper-scale", f.paper_scale, "Full-scale replicate count (40000 runs)");
  auto* fig2 = app.add_subcommand("fig2", "Product of means vs product of medians");
  common(fig2, false);
  fig2->add_flag("--paper-scale", f.paper_scale, "Full-scale replicate count (200 draws per box)");
  auto* sweep = app.add_subcommand("sweep", "Cartesian sweep of a single-run config");
  common(sweep, true);

  CLI11_PARSE(app, argc, argv);
  try {
    Json doc = f.config.empty() ? Json::object() : read_doc(f.config);
    if (*run) return execute(doc, "", f);
    if (*plan) return execute(doc, "plan", f);
    if (*fig1) return execute(doc, "fig1", f);
    if (*fig2) return execute(doc, "fig2", f);
    if (*sweep) return execute(doc, "sweep", f);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "smc: %s\n", e.what());
    return 1;
  }
  return 0;
}
