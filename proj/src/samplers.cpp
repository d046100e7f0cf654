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

#include "smc/samplers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "smc/error.hpp"
#include "smc/weights.hpp"

namespace smc {

std::vector<double> ParticleCloud::normalized_weights() const {
  return normalize_log_weights(log_weights);
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::standard: return "standard";
    case Algorithm::wastefree: return "wastefree";
    case Algorithm::greedy: return "greedy";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "standard") return Algorithm::standard;
  if (name == "wastefree" || name == "waste-free") return Algorithm::wastefree;
  if (name == "greedy") return Algorithm::greedy;
  throw ConfigError("unknown algorithm '" + name + "'");
}

KernelFactory constant_kernel(KernelSpec spec) {
  spec.validate();
  return [spec](int, const TemperedSequence&) { return spec; };
}

int RunConfig::chain_length(int t) const {
  return P.size() == 1 ? P.front() : P.at(static_cast<std::size_t>(t));
}

void RunConfig::validate() const {
  if (!sequence) throw ConfigError("run: sequence is required");
  if (!kernel) throw ConfigError("run: kernel factory is required");
  if (M < 1) throw ConfigError("run: M must be >= 1");
  if (P.empty()) throw ConfigError("run: P must be given");
  for (int p : P) {
    if (p < 1) throw ConfigError("run: every P_t must be >= 1");
  }
  const auto horizon = static_cast<std::size_t>(sequence->horizon());
  if (algorithm == Algorithm::greedy) {
    if (P.size() != 1 && P.size() != horizon + 1) {
      throw ConfigError("run: greedy needs one P or P_0..P_T (" + std::to_string(horizon + 1) +
                        " values)");
    }
  } else if (P.size() != 1) {
    throw ConfigError("run: " + to_string(algorithm) + " takes a single chain length P");
  }
}

std::vector<double> RunRecord::lambdas() const {
  std::vector<double> out;
  out.reserve(iterations.size());
  for (const auto& it : iterations) out.push_back(it.lambda);
  return out;
}

namespace {

struct Fnv {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
};

}  // namespace

std::uint64_t fingerprint(const RunRecord& r) {
  Fnv f;
  f.u64(static_cast<std::uint64_t>(r.algorithm));
  f.u64(r.seed);
  f.f64(r.log_z);
  f.u64(r.markov_steps);
  f.u64(r.aborted_at ? static_cast<std::uint64_t>(*r.aborted_at) + 1 : 0);
  for (const auto& it : r.iterations) {
    f.u64(static_cast<std::uint64_t>(it.t));
    f.f64(it.lambda);
    f.u64(static_cast<std::uint64_t>(it.chain_length));
    f.u64(it.pool_size);
    f.f64(it.log_ratio);
    f.f64(it.ress);
    f.u64(it.kernel.proposals);
    f.u64(it.kernel.accepts);
  }
  for (double x : r.final_cloud.positions) f.f64(x);
  for (double w : r.final_cloud.log_weights) f.f64(w);
  return f.h;
}

std::vector<std::size_t> resample_multinomial(std::span<const double> weights, std::size_t M,
                                              RandomStream& rng) {
  if (weights.empty()) throw ConfigError("resample: empty weight vector");
  std::vector<double> cdf(weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ConfigError("resample: weights must be finite and nonnegative");
    }
    total += w;
    cdf[i] = total;
  }
  if (total == 0.0) throw DegenerateWeightsError("resample: all weights are zero", -1);
  if (std::abs(total - 1.0) > 1e-8) throw ConfigError("resample: weights must sum to 1");

  std::vector<std::size_t> out(M);
  for (auto& a : out) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    a = static_cast<std::size_t>(it - cdf.begin());
  }
  return out;
}

namespace {

// One SMC run. Each iteration t >= 1 is move() (resample + kernel chains,
// leaving a pool that targets pi_{t-1}) followed by reweight() (G_t).
class Engine {
 public:
  Engine(int M, bool waste_free, std::uint64_t seed, Execution exec, int threads,
         Algorithm algorithm)
      : M_(M), waste_free_(waste_free), seed_(seed), exec_(exec), threads_(threads) {
    record_.algorithm = algorithm;
    record_.seed = seed;
  }

  void initialize(const TemperedSequence& seq, int chain_length) {
    const int N = waste_free_ ? M_ * chain_length : M_;
    cloud_ = ParticleCloud{};
    cloud_.t = 0;
    cloud_.dim = seq.dim();
    cloud_.chains = M_;
    cloud_.chain_length = waste_free_ ? chain_length : 1;
    cloud_.positions.resize(static_cast<std::size_t>(N) * static_cast<std::size_t>(seq.dim()));
    cloud_.log_weights.resize(static_cast<std::size_t>(N));
    if (exec_ == Execution::parallel) {
      detail::sample_base_parallel(seq, seed_, cloud_, threads_);
    } else {
      detail::sample_base_reference(seq, seed_, cloud_);
    }
    pending_ = IterationRecord{};
    pending_.t = 0;
    pending_.chain_length = chain_length;
  }

  /// Returns false when the previous pool is degenerate (the run is aborted).
  bool move(const TemperedSequence& seq, int t, int chain_length, const KernelSpec& spec) {
    const double lse = log_sum_exp(cloud_.log_weights);
    if (!std::isfinite(lse)) {
      abort(t - 1, "all weights are zero");
      return false;
    }
    std::vector<double> w(cloud_.size());
    for (std::size_t n = 0; n < w.size(); ++n) w[n] = std::exp(cloud_.log_weights[n] - lse);
    RandomStream resample_rng(seed_, t, 0, StreamPurpose::resample);
    const auto ancestors = resample_multinomial(w, static_cast<std::size_t>(M_), resample_rng);

    const MarkovKernel kernel(spec, seq.dim(), seq.base_gaussian());
    ParticleCloud next;
    next.t = t;
    next.dim = seq.dim();
    next.chains = M_;
    next.chain_length = waste_free_ ? chain_length : 1;
    const std::size_t N = waste_free_ ? static_cast<std::size_t>(M_) * chain_length
                                      : static_cast<std::size_t>(M_);
    next.positions.resize(N * static_cast<std::size_t>(seq.dim()));
    next.log_weights.resize(N);

    std::vector<KernelStats> stats(static_cast<std::size_t>(M_));
    detail::ChainBatch batch;
    batch.seq = &seq;
    batch.t = t;
    batch.kernel = &kernel;
    batch.prev = &cloud_;
    batch.ancestors = ancestors;
    batch.chain_length = chain_length;
    batch.keep_all = waste_free_;
    batch.seed = seed_;
    batch.next = &next;
    batch.stats = stats;
    if (exec_ == Execution::parallel) {
      detail::advance_chains_parallel(batch, threads_);
    } else {
      detail::advance_chains_reference(batch);
    }

    pending_ = IterationRecord{};
    pending_.t = t;
    pending_.chain_length = chain_length;
    for (const auto& s : stats) pending_.kernel += s;
    record_.markov_steps += pending_.kernel.proposals;
    cloud_ = std::move(next);
    return true;
  }

  const ParticleCloud& cloud() const noexcept { return cloud_; }

  /// Weights the current pool by G_t and closes iteration t.
  bool reweight(const TemperedSequence& seq, int t) {
    if (exec_ == Execution::parallel) {
      detail::log_weights_parallel(seq, t, cloud_, threads_);
    } else {
      detail::log_weights_reference(seq, t, cloud_);
    }
    pending_.pool_size = cloud_.size();
    pending_.lambda =
        seq.temperature(t).value_or(std::numeric_limits<double>::quiet_NaN());
    pending_.log_ratio = log_mean_exp(cloud_.log_weights);
    pending_.ress = relative_ess(cloud_.log_weights);
    record_.iterations.push_back(pending_);
    if (!std::isfinite(pending_.log_ratio)) {
      abort(t, "all weights are zero");
      return false;
    }
    record_.log_z += pending_.log_ratio;
    return true;
  }

  void mark_fallback() { pending_.schedule_fallback = true; }

  RunRecord finish() {
    record_.final_cloud = std::move(cloud_);
    return std::move(record_);
  }

  RunRecord& record() { return record_; }

 private:
  void abort(int t, const std::string& why) {
    record_.aborted_at = t;
    record_.abort_reason = why + " at iteration " + std::to_string(t);
  }

  int M_;
  bool waste_free_;
  std::uint64_t seed_;
  Execution exec_;
  int threads_;
  ParticleCloud cloud_;
  IterationRecord pending_;
  RunRecord record_;
};

RunRecord run_fixed(const RunConfig& cfg, bool waste_free) {
  cfg.validate();
  const TemperedSequence& seq = *cfg.sequence;
  Engine engine(cfg.M, waste_free, cfg.seed, cfg.execution, cfg.threads, cfg.algorithm);
  engine.initialize(seq, cfg.chain_length(0));
  if (!engine.reweight(seq, 0)) return engine.finish();
  for (int t = 1; t <= seq.horizon(); ++t) {
    if (!engine.move(seq, t, cfg.chain_length(t), cfg.kernel(t, seq))) break;
    if (!engine.reweight(seq, t)) break;
  }
  return engine.finish();
}

}  // namespace

RunRecord run_standard_smc(const RunConfig& cfg) {
  if (cfg.algorithm != Algorithm::standard) throw ConfigError("run_standard_smc: wrong algorithm");
  return run_fixed(cfg, false);
}

RunRecord run_wastefree_smc(const RunConfig& cfg) {
  if (cfg.algorithm != Algorithm::wastefree) {
    throw ConfigError("run_wastefree_smc: wrong algorithm");
  }
  return run_fixed(cfg, true);
}

RunRecord run_greedy_wastefree(const RunConfig& cfg) {
  if (cfg.algorithm != Algorithm::greedy) throw ConfigError("run_greedy_wastefree: wrong algorithm");
  return run_fixed(cfg, true);
}

RunRecord run_smc(const RunConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::standard: return run_standard_smc(cfg);
    case Algorithm::wastefree: return run_wastefree_smc(cfg);
    case Algorithm::greedy: return run_greedy_wastefree(cfg);
  }
  throw ConfigError("run_smc: unknown algorithm");
}

RunRecord run_adaptive_smc(const AdaptiveRunConfig& cfg) {
  if (!cfg.path) throw ConfigError("adaptive run: path is required");
  if (!cfg.kernel) throw ConfigError("adaptive run: kernel factory is required");
  if (cfg.M < 1 || cfg.P < 1) throw ConfigError("adaptive run: M and P must be >= 1");
  if (cfg.algorithm == Algorithm::greedy) {
    throw ConfigError("adaptive run: greedy chain lengths need a fixed horizon");
  }
  const bool waste_free = cfg.algorithm == Algorithm::wastefree;
  Engine engine(cfg.M, waste_free, cfg.seed, cfg.execution, cfg.threads, cfg.algorithm);

  std::vector<double> lambdas;
  auto next_lambda = [&](double prev) {
    const ParticleCloud& c = engine.cloud();
    std::vector<double> v(c.size());
    for (std::size_t n = 0; n < v.size(); ++n) v[n] = cfg.path->potential_difference(c.particle(n));
    const AdaptiveStep step = adaptive_ess_step(v, prev, cfg.schedule);
    if (step.fallback) {
      engine.mark_fallback();
      engine.record().warnings.push_back("adaptive schedule fell back to the minimal step at t=" +
                                         std::to_string(lambdas.size()));
    }
    return step.lambda;
  };

  // The engine only reads lambda_0..lambda_t at iteration t, so it can run on
  // a path whose schedule is extended one exponent at a time.
  engine.initialize(*cfg.path, cfg.P);
  lambdas.push_back(next_lambda(0.0));
  auto seq = cfg.path->with_schedule(Schedule::partial(lambdas));
  if (!engine.reweight(*seq, 0)) return engine.finish();
  for (int t = 1; lambdas.back() < 1.0; ++t) {
    if (t > cfg.max_iterations) {
      throw ConfigError("adaptive run: exceeded max_iterations before reaching lambda = 1");
    }
    if (!engine.move(*seq, t, cfg.P, cfg.kernel(t, *seq))) break;
    lambdas.push_back(next_lambda(lambdas.back()));
    if (lambdas.back() >= 1.0) lambdas.back() = 1.0;
    seq = cfg.path->with_schedule(Schedule::partial(lambdas));
    if (!engine.reweight(*seq, t)) break;
  }
  return engine.finish();
}

}  // namespace smc
