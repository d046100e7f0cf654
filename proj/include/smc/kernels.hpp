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

#include "smc/gaussian.hpp"
#include "smc/model.hpp"

namespace smc {

/// Invariant distribution of a kernel, seen through its (unnormalized) log-density.
class Target {
 public:
  virtual ~Target() = default;
  virtual int dim() const = 0;
  virtual double log_density(Point x) const = 0;
  virtual bool has_gradient() const { return false; }
  virtual void grad_log_density(Point x, MutablePoint out) const;
  virtual bool has_exact_sampler() const { return false; }
  virtual void sample_exact(RandomStream& rng, MutablePoint out) const;
};

/// pi_t of a tempered sequence (t = -1 is the base measure).
class SequenceTarget final : public Target {
 public:
  SequenceTarget(const TemperedSequence& seq, int t) : seq_(&seq), t_(t) {}
  int dim() const override { return seq_->dim(); }
  double log_density(Point x) const override {
    return t_ < 0 ? seq_->log_base(x) : seq_->log_density(t_, x);
  }
  bool has_gradient() const override { return seq_->has_gradient(); }
  void grad_log_density(Point x, MutablePoint out) const override;
  bool has_exact_sampler() const override { return t_ < 0 || seq_->has_exact_sampler(); }
  void sample_exact(RandomStream& rng, MutablePoint out) const override;

 private:
  const TemperedSequence* seq_;
  int t_;
};

/// Target assembled from callables; handy for standalone kernels and tests.
class FunctionTarget final : public Target {
 public:
  using LogDensity = std::function<double(Point)>;
  using Gradient = std::function<void(Point, MutablePoint)>;
  using Sampler = std::function<void(RandomStream&, MutablePoint)>;

  FunctionTarget(int dim, LogDensity log_density, Gradient gradient = {}, Sampler sampler = {})
      : dim_(dim),
        log_density_(std::move(log_density)),
        gradient_(std::move(gradient)),
        sampler_(std::move(sampler)) {}
  int dim() const override { return dim_; }
  double log_density(Point x) const override { return log_density_(x); }
  bool has_gradient() const override { return static_cast<bool>(gradient_); }
  void grad_log_density(Point x, MutablePoint out) const override { gradient_(x, out); }
  bool has_exact_sampler() const override { return static_cast<bool>(sampler_); }
  void sample_exact(RandomStream& rng, MutablePoint out) const override { sampler_(rng, out); }

 private:
  int dim_;
  LogDensity log_density_;
  Gradient gradient_;
  Sampler sampler_;
};

enum class KernelKind { rwm, mala, pcn, indep_mixture };

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

/// A pi_{t-1}-invariant transition and its tunable. `step` is the RWM
/// proposal scale, the MALA step h, the pCN autoregression rho, or the
/// mixture refresh probability gamma, depending on `kind`.
struct KernelSpec {
  KernelKind kind = KernelKind::rwm;
  double step = 1.0;
  /// Proposal covariance C for RWM (scale^2 C) and pCN (reference N(mean, C)).
  /// pCN falls back to the sequence's Gaussian base when unset.
  std::optional<Eigen::MatrixXd> precond;

  static KernelSpec rwm(double scale) { return {KernelKind::rwm, scale, std::nullopt}; }
  static KernelSpec mala(double h) { return {KernelKind::mala, h, std::nullopt}; }
  static KernelSpec pcn(double rho) { return {KernelKind::pcn, rho, std::nullopt}; }
  static KernelSpec indep_mixture(double gamma) {
    return {KernelKind::indep_mixture, gamma, std::nullopt};
  }

  /// Throws ConfigError when `step` is outside the kind's admissible range.
  void validate() const;
};

/// Default RWM scale: proposal covariance 2.38^2 / d I_d.
double default_rwm_scale(int dim);

/// Default MALA step h = 1 / (beta_V sqrt(d) max(1, kappa)), kappa = beta_V / alpha_V.
double default_mala_step(int dim, double beta_V, double alpha_V);

/// rho maximizing the pCN spectral-gap lower bound at exponent lambda:
/// sqrt(1 - lambda_C / lambda) for lambda >= lambda_C, else 0, lambda_C = 1 / (2 beta_V Tr C).
double pcn_rho_for_lambda(double lambda, double beta_V, double trace_C);

struct KernelStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepts = 0;

  double acceptance_rate() const {
    return proposals == 0 ? 0.0 : static_cast<double>(accepts) / static_cast<double>(proposals);
  }
  KernelStats& operator+=(const KernelStats& o) {
    proposals += o.proposals;
    accepts += o.accepts;
    return *this;
  }
};

/// Current point of a chain with cached evaluations.
struct ChainState {
  std::vector<double> x;
  double log_density = 0.0;
  /// log density of the pCN reference Gaussian at x.
  double log_reference = 0.0;
  /// Gradient of log_density at x (MALA only).
  std::vector<double> grad;
};

/// Single-step Metropolis-type kernel. Immutable after construction; a
/// single instance may step many chains concurrently.
class MarkovKernel {
 public:
  /// `reference` supplies the pCN centre and covariance when spec.precond is
  /// unset; ignored by the other kinds.
  MarkovKernel(const KernelSpec& spec, int dim, const Gaussian* reference = nullptr);

  const KernelSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return dim_; }

  /// Evaluates the caches at x. Throws StateCorruptionError for a non-finite log-density.
  ChainState init(const Target& target, Point x) const;

  /// Advances `state` by one kernel step. `scratch` is caller-owned workspace.
  /// Returns whether the proposal was accepted (for the mixture: refreshed).
  bool step(const Target& target, ChainState& state, ChainState& scratch,
            RandomStream& rng) const;

  /// Draws a proposal from `from` (not defined for the mixture kernel).
  void propose(const ChainState& from, RandomStream& rng, MutablePoint out) const;
  /// log q(from -> to), including normalizing constants.
  double log_proposal_density(const ChainState& from, Point to) const;
  /// log acceptance probability min(0, log MH ratio), as used by step().
  double log_accept_prob(const ChainState& from, const ChainState& to) const;

 private:
  void evaluate(const Target& target, ChainState& s) const;

  KernelSpec spec_;
  int dim_;
  Eigen::MatrixXd chol_;  // RWM: chol(C); pCN: chol(C) of the reference
  Eigen::VectorXd centre_;
  std::optional<Gaussian> reference_;
};

struct StepOutcome {
  std::vector<double> x;
  bool accepted;
};

// One-shot conveniences: construct a kernel and take one step from x.
StepOutcome rwm_step(const Target& target, Point x, double scale, RandomStream& rng);
StepOutcome mala_step(const Target& target, Point x, double h, RandomStream& rng);
/// pCN targeting N(0, C) exp(-potential); `target` must carry that product.
StepOutcome pcn_step(const Target& target, Point x, double rho, const Eigen::MatrixXd& cov,
                     RandomStream& rng);
/// pCN for N(0, C) exp(-potential(x)): accepts with probability
/// min(1, exp(potential(x) - potential(y))).
StepOutcome pcn_step(const std::function<double(Point)>& potential, Point x, double rho,
                     const Eigen::MatrixXd& cov, RandomStream& rng);
StepOutcome indep_mixture_step(const Target& target, Point x, double gamma, RandomStream& rng);

}  // namespace smc
