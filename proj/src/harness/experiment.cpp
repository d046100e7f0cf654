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


#include "smc/harness/experiment.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>

#include "smc/error.hpp"
#include "smc/estimators.hpp"
#include "smc/rng.hpp"

namespace smc::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct JobOutput {
  std::vector<ResultRow> rows;
  std::vector<std::string> diagnostics;
};

struct TimedRun {
  RunRecord record;
  double seconds = 0.0;
};

TimedRun run_once(const Arm& arm, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  TimedRun out;
  if (arm.adaptive) {
    AdaptiveRunConfig c = *arm.adaptive;
    c.seed = seed;
    out.record = run_adaptive_smc(c);
  } else {
    RunConfig c = arm.run;
    c.seed = seed;
    out.record = run_smc(c);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::int64_t nominal_moves(const RunRecord& r, int M) {
  std::int64_t total = 0;
  for (std::size_t t = 1; t < r.iterations.size(); ++t) total += r.iterations[t].chain_length;
  return total * M;
}

ResultRow base_row(const Arm& arm, const std::string& experiment, const std::string& hash,
                   int replicate, std::uint64_t seed, const std::string& estimator) {
  ResultRow row;
  row.config_hash = hash;
  row.replicate = replicate;
  row.seed = seed;
  row.experiment = experiment;
  row.arm = arm.name;
  row.algorithm = to_string(arm.run.algorithm);
  row.estimator = estimator;
  row.dim = arm.meta.dim;
  row.C = arm.meta.C;
  row.M = arm.meta.M;
  row.P = arm.meta.P;
  row.P_final = arm.meta.P_final;
  row.J = arm.meta.J;
  row.T = arm.meta.T;
  row.value = kNaN;
  row.reference = kNaN;
  row.error = kNaN;
  row.rel_error = kNaN;
  return row;
}

void fill_log_z(ResultRow& row, double value, const std::optional<double>& ref) {
  row.value = value;
  if (ref) {
    row.reference = *ref;
    row.error = value - *ref;
    row.rel_error = std::expm1(row.error);
  }
}

std::string diagnostics_line(const std::string& hash, std::size_t arm_index, const Arm& arm,
                             int replicate, int run, std::uint64_t seed, const RunRecord& r,
                             const IterationRecord& it) {
  Json j = {{"config_hash", hash},
            {"arm_index", arm_index},
            {"arm", arm.name},
            {"algorithm", to_string(r.algorithm)},
            {"replicate", replicate},
            {"run", run},
            {"seed", seed},
            {"t", it.t},
            {"lambda", std::isnan(it.lambda) ? Json(nullptr) : Json(it.lambda)},
            {"P_t", it.chain_length},
            {"N", it.pool_size},
            {"log_ratio", std::isfinite(it.log_ratio) ? Json(it.log_ratio) : Json(nullptr)},
            {"ress", std::isfinite(it.ress) ? Json(it.ress) : Json(nullptr)},
            {"proposals", it.kernel.proposals},
            {"acceptance", it.kernel.acceptance_rate()},
            {"schedule_fallback", it.schedule_fallback}};
  return j.dump();
}

JobOutput run_job(const Arm& arm, std::size_t arm_index, int replicate,
                  const ExperimentConfig& cfg, const std::string& hash, bool keep_diag) {
  JobOutput out;
  const std::string experiment = to_string(cfg.experiment);
  const std::uint64_t seed0 = replicate_seed(cfg.replication.master_seed, replicate, 0);
  try {
    std::vector<TimedRun> runs;
    runs.reserve(static_cast<std::size_t>(arm.runs));
    for (int j = 0; j < arm.runs; ++j) {
      const std::uint64_t seed = replicate_seed(cfg.replication.master_seed, replicate, j);
      runs.push_back(run_once(arm, seed));
      if (keep_diag) {
        for (const auto& it : runs.back().record.iterations) {
          out.diagnostics.push_back(
              diagnostics_line(hash, arm_index, arm, replicate, j, seed, runs.back().record, it));
        }
      }
    }
    const RunRecord& first = runs.front().record;
    for (const auto& est : arm.estimators) {
      ResultRow row = base_row(arm, experiment, hash, replicate, seed0, est);
      row.T = static_cast<int>(first.iterations.size()) - 1;
      const bool all_runs = est == "log_z_medians";
      const std::size_t used = all_runs ? runs.size() : 1;
      for (std::size_t j = 0; j < used; ++j) {
        row.markov_steps += runs[j].record.markov_steps;
        row.nominal_cost += nominal_moves(runs[j].record, arm.run.M);
        row.wall_time_s += runs[j].seconds;
      }
      if (!all_runs) row.J = 1;
      std::string abort;
      for (std::size_t j = 0; j < used && abort.empty(); ++j) {
        if (!runs[j].record.ok()) abort = "aborted: " + runs[j].record.abort_reason;
      }
      if (!abort.empty()) {
        row.status = abort;
      } else if (est == "log_z_means") {
        fill_log_z(row, z_product_of_means(first).log_value, arm.reference_log_z);
      } else if (est == "log_z_medians") {
        std::vector<RunRecord> recs;
        for (const auto& r : runs) recs.push_back(r.record);
        fill_log_z(row, z_product_of_medians(recs).log_value, arm.reference_log_z);
      } else {
        const std::size_t i = std::stoul(est.substr(est.find('[') + 1));
        row.value = moment_estimate(first.final_cloud, [i](Point x) { return x[i]; });
        if (arm.reference_mean) {
          row.reference = (*arm.reference_mean)[i];
          row.error = row.value - row.reference;
          row.rel_error = row.reference != 0.0 ? row.error / std::abs(row.reference) : kNaN;
        }
      }
      out.rows.push_back(std::move(row));
    }
  } catch (const std::exception& e) {
    out.rows.clear();
    for (const auto& est : arm.estimators) {
      ResultRow row = base_row(arm, experiment, hash, replicate, seed0, est);
      row.status = std::string("error: ") + e.what();
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

Json arms_json(const Protocol& p) {
  Json arms = Json::array();
  for (std::size_t i = 0; i < p.arms.size(); ++i) {
    const Arm& a = p.arms[i];
    arms.push_back({{"index", i},
                    {"name", a.name},
                    {"algorithm", to_string(a.run.algorithm)},
                    {"adaptive", a.adaptive.has_value()},
                    {"dim", a.meta.dim},
                    {"M", a.run.M},
                    {"P", a.run.P},
                    {"T", a.meta.T},
                    {"runs", a.runs},
                    {"estimators", a.estimators},
                    {"nominal_cost", a.nominal_cost}});
  }
  return arms;
}

}  // namespace

std::uint64_t replicate_seed(std::uint64_t master_seed, int replicate, int run) {
  return stream_key(master_seed, run, static_cast<std::uint64_t>(replicate),
                    StreamPurpose::replicate);
}

Protocol build_protocol(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::single_run: return single_run_protocol(cfg);
    case Experiment::fig1: return fig1_protocol(cfg);
    case Experiment::fig2: return fig2_protocol(cfg);
    case Experiment::sweep: return sweep_protocol(cfg);
    case Experiment::plan: break;
  }
  throw ConfigError("build_protocol: the plan experiment has no replicate grid");
}

Json to_json(const PlanResult& r) {
  return {{"plan", r.plan},         {"M", r.M},
          {"P", r.P},               {"J", r.J},
          {"T", r.T},               {"formula_tag", to_string(r.tag)},
          {"predicted_cost", r.predicted_cost}, {"notes", r.notes}};
}

std::vector<Json> run_plans(const PlanConfig& cfg) {
  std::vector<Json> out;
  for (const auto& plan : cfg.plans) {
    for (double eps : cfg.epsilon) {
      for (double eta : cfg.eta) {
        for (int T : cfg.T) {
          for (int M : cfg.M) {
            for (double gamma : cfg.gamma) {
              for (double chi : cfg.chi_bar_sq) {
                PlanInput in;
                in.epsilon = eps;
                in.eta = eta;
                in.T = T;
                in.M = M;
                in.gamma = gamma;
                in.chi_bar_sq = chi;
                Json rec = {{"input",
                             {{"epsilon", eps},
                              {"eta", eta},
                              {"T", T},
                              {"M", M},
                              {"gamma", gamma},
                              {"chi_bar_sq", chi}}}};
                try {
                  PlanResult r;
                  if (plan == "standard_moments") {
                    r = plan_standard_moments(in);
                  } else if (plan == "wastefree_moments") {
                    r = plan_wastefree_moments(in);
                  } else if (plan == "greedy_moments") {
                    r = plan_greedy_moments(in);
                  } else if (plan == "wastefree_z") {
                    r = plan_wastefree_z(in);
                  } else if (plan == "medians_z") {
                    r = plan_medians_z(in);
                  } else if (plan == "standard_z_means") {
                    r = plan_standard_z(in, ZVariant::means);
                  } else if (plan == "standard_z_medians") {
                    r = plan_standard_z(in, ZVariant::medians, cfg.medians_c);
                  } else {
                    throw ConfigError("plan: unknown plan '" + plan + "'");
                  }
                  rec["result"] = to_json(r);
                } catch (const std::exception& e) {
                  rec["plan"] = plan;
                  rec["error"] = e.what();
                }
                out.push_back(std::move(rec));
              }
            }
          }
        }
      }
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  ExperimentResult res;
  res.config_hash = config_hash(cfg.resolved);
  const std::string dir = options.out_dir.empty() ? cfg.output.directory : options.out_dir;
  res.manifest = {{"config_hash", res.config_hash},
                  {"experiment", to_string(cfg.experiment)},
                  {"resolved_config", cfg.resolved},
                  {"versions", version_info()}};

  if (cfg.experiment == Experiment::plan) {
    res.plans = run_plans(cfg.plan);
    res.manifest["plans"] = res.plans.size();
    if (options.write_files) {
      std::filesystem::create_directories(dir);
      std::vector<std::string> lines;
      for (const auto& p : res.plans) lines.push_back(p.dump());
      write_lines(dir + "/plans.jsonl", lines);
      write_json(dir + "/manifest.json", res.manifest);
    }
    return res;
  }

  const Protocol protocol = build_protocol(cfg);
  const int n_seeds = cfg.replication.n_seeds;
  const std::size_t n_jobs = protocol.arms.size() * static_cast<std::size_t>(n_seeds);
  std::vector<JobOutput> outputs(n_jobs);
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  const auto n = static_cast<std::ptrdiff_t>(n_jobs);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto arm = static_cast<std::size_t>(k) / static_cast<std::size_t>(n_seeds);
    const int rep = static_cast<int>(static_cast<std::size_t>(k) % static_cast<std::size_t>(n_seeds));
    outputs[static_cast<std::size_t>(k)] = run_job(protocol.arms[arm], arm, rep, cfg,
                                                   res.config_hash, options.keep_diagnostics);
  }

  std::size_t grid = 0;
  for (auto& o : outputs) {
    for (auto& row : o.rows) {
      row.grid_index = grid++;
      res.rows.push_back(std::move(row));
    }
    for (auto& l : o.diagnostics) res.diagnostics.push_back(std::move(l));
  }

  int max_runs = 1;
  for (const auto& a : protocol.arms) max_runs = std::max(max_runs, a.runs);
  Json seeds = Json::array();
  for (int r = 0; r < n_seeds; ++r) {
    Json row = Json::array();
    for (int j = 0; j < max_runs; ++j) row.push_back(replicate_seed(cfg.replication.master_seed, r, j));
    seeds.push_back(row);
  }
  res.manifest["protocol"] = protocol.resolved;
  res.manifest["arms"] = arms_json(protocol);
  res.manifest["notes"] = protocol.notes;
  res.manifest["master_seed"] = cfg.replication.master_seed;
  res.manifest["n_seeds"] = n_seeds;
  res.manifest["seed_rule"] = "seed(r, j) = stream_key(master_seed, j, r, replicate)";
  res.manifest["seeds"] = seeds;
  res.manifest["rows"] = res.rows.size();
  res.manifest["csv_columns"] = result_columns();

  if (options.write_files) {
    std::filesystem::create_directories(dir);
    write_results_csv(dir + "/results.csv", res.rows);
    write_lines(dir + "/diagnostics.jsonl", res.diagnostics);
    write_json(dir + "/manifest.json", res.manifest);
  }
  return res;
}

}  // namespace smc::harness
