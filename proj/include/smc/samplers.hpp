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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smc/kernels.hpp"
#include "smc/model.hpp"
#include "smc/schedule.hpp"

namespace smc {

/// Positions and log-weights of one iteration's pool.
///
/// Waste-free layout stores chain m's states p = 1..P at rows m * P + p - 1,
/// so N = M * P. Standard layout keeps only chain endpoints; N = M.
struct ParticleCloud {
  int t = 0;
  int dim = 0;
  int chains = 0;
  int chain_length = 1;
  std::vector<double> positions;
  std::vector<double> log_weights;

  std::size_t size() const noexcept { return log_weights.size(); }
  Point particle(std::size_t n) const {
    return {positions.data() + n * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  MutablePoint particle(std::size_t n) {
    return {positions.data() + n * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  /// W_n, summing to one. Throws DegenerateWeightsError when all weights vanish.
  std::vector<double> normalized_weights() const;
};

enum class Algorithm { standard, wastefree, greedy };
std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

/// Serial is the reference implementation; parallel distributes chains and
/// weight evaluations over OpenMP threads. Both produce identical records.
enum class Execution { serial, parallel };

/// Kernel for iteration t (it leaves pi_{t-1} invariant).
using KernelFactory = std::function<KernelSpec(int t, const TemperedSequence& seq)>;
KernelFactory constant_kernel(KernelSpec spec);

struct RunConfig {
  std::shared_ptr<const TemperedSequence> sequence;
  KernelFactory kernel;
  int M = 1;
  /// One value (constant chain length) or P_0..P_T (greedy).
  std::vector<int> P{1};
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::wastefree;
  Execution execution = Execution::serial;
  /// OpenMP threads for Execution::parallel; 0 keeps the runtime default.
  int threads = 0;

  int chain_length(int t) const;
  /// Throws ConfigError on inconsistent sizes.
  void validate() const;
};

struct IterationRecord {
  int t = 0;
  /// Realized lambda_t, NaN for non-tempering sequences.
  double lambda = 0.0;
  int chain_length = 1;
  std::size_t pool_size = 0;
  /// log pi_{t-1}-hat(G_t) = log of the mean incremental weight.
  double log_ratio = 0.0;
  double ress = 1.0;
  KernelStats kernel;
  bool schedule_fallback = false;
};

struct RunRecord {
  Algorithm algorithm = Algorithm::wastefree;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> iterations;
  /// Pool from the last completed iteration (X_T^{1:N} for a full run).
  ParticleCloud final_cloud;
  /// Running sum of log_ratio, i.e. log Z_T-hat.
  double log_z = 0.0;
  std::uint64_t markov_steps = 0;
  std::optional<int> aborted_at;
  std::string abort_reason;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return !aborted_at.has_value(); }
  std::vector<double> lambdas() const;
};

/// 64-bit digest over every numeric field of a record; equal records hash equal.
std::uint64_t fingerprint(const RunRecord& record);

/// M IID draws from Cat(weights). Throws DegenerateWeightsError for all-zero
/// weights and ConfigError for negative, non-finite or unnormalized input.
std::vector<std::size_t> resample_multinomial(std::span<const double> weights, std::size_t M,
                                              RandomStream& rng);

/// Standard SMC: only chain endpoints are reweighted and resampled.
RunRecord run_standard_smc(const RunConfig& cfg);
/// Waste-free SMC: all M * P chain states form the next pool.
RunRecord run_wastefree_smc(const RunConfig& cfg);
/// Greedy waste-free SMC: waste-free with P = P_t at iteration t.
RunRecord run_greedy_wastefree(const RunConfig& cfg);
/// Dispatches on cfg.algorithm.
RunRecord run_smc(const RunConfig& cfg);

struct AdaptiveRunConfig {
  /// Base and potential of the path; its own schedule is ignored.
  std::shared_ptr<const GeometricPath> path;
  KernelFactory kernel;
  int M = 1;
  int P = 1;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::wastefree;
  Execution execution = Execution::serial;
  int threads = 0;
  AdaptiveOptions schedule;
  int max_iterations = 100'000;
};

/// Standard or waste-free SMC with lambda_t chosen on the fly so that the
/// incremental weights have relative ESS equal to the target.
RunRecord run_adaptive_smc(const AdaptiveRunConfig& cfg);

namespace detail {

/// Work description for advancing the M chains of one iteration.
struct ChainBatch {
  const TemperedSequence* seq = nullptr;
  int t = 0;
  const MarkovKernel* kernel = nullptr;
  const ParticleCloud* prev = nullptr;
  std::span<const std::size_t> ancestors;
  int chain_length = 1;
  bool keep_all = true;
  std::uint64_t seed = 0;
  ParticleCloud* next = nullptr;
  std::span<KernelStats> stats;
};

/// Runs chain m of a batch. Shared by both execution paths.
void run_chain(const ChainBatch& batch, std::size_t m);

void advance_chains_reference(const ChainBatch& batch);
void advance_chains_parallel(const ChainBatch& batch, int threads);

void sample_base_reference(const TemperedSequence& seq, std::uint64_t seed, ParticleCloud& cloud);
void sample_base_parallel(const TemperedSequence& seq, std::uint64_t seed, ParticleCloud& cloud,
                          int threads);

void log_weights_reference(const TemperedSequence& seq, int t, ParticleCloud& cloud);
void log_weights_parallel(const TemperedSequence& seq, int t, ParticleCloud& cloud, int threads);

}  // namespace detail

}  // namespace smc
