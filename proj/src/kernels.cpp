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

#include "smc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smc/error.hpp"

namespace smc {

void Target::grad_log_density(Point, MutablePoint) const {
  throw ConfigError("target does not provide a gradient");
}

void Target::sample_exact(RandomStream&, MutablePoint) const {
  throw ConfigError("target has no exact sampler");
}

void SequenceTarget::grad_log_density(Point x, MutablePoint out) const {
  if (t_ < 0) {
    const Gaussian* base = seq_->base_gaussian();
    if (!base) throw ConfigError("base measure has no gradient");
    base->grad_log_pdf(x, out);
    return;
  }
  seq_->grad_log_density(t_, x, out);
}

void SequenceTarget::sample_exact(RandomStream& rng, MutablePoint out) const {
  if (t_ < 0) {
    seq_->sample_base(rng, out);
    return;
  }
  seq_->sample_exact(t_, rng, out);
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::rwm: return "rwm";
    case KernelKind::mala: return "mala";
    case KernelKind::pcn: return "pcn";
    case KernelKind::indep_mixture: return "indep_mixture";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  if (name == "rwm") return KernelKind::rwm;
  if (name == "mala") return KernelKind::mala;
  if (name == "pcn") return KernelKind::pcn;
  if (name == "indep_mixture") return KernelKind::indep_mixture;
  throw ConfigError("unknown kernel kind '" + name + "'");
}

void KernelSpec::validate() const {
  switch (kind) {
    case KernelKind::rwm:
    case KernelKind::mala:
      if (!(step > 0.0)) throw ConfigError(to_string(kind) + ": step must be > 0");
      break;
    case KernelKind::pcn:
      if (!(step >= 0.0 && step < 1.0)) throw ConfigError("pcn: rho must lie in [0, 1)");
      break;
    case KernelKind::indep_mixture:
      if (!(step > 0.0 && step <= 1.0)) {
        throw ConfigError("indep_mixture: gamma must lie in (0, 1]");
      }
      break;
  }
}

double default_rwm_scale(int dim) { return 2.38 / std::sqrt(static_cast<double>(dim)); }

double default_mala_step(int dim, double beta_V, double alpha_V) {
  const double kappa = alpha_V > 0.0 ? beta_V / alpha_V : 1.0;
  return 1.0 / (beta_V * std::sqrt(static_cast<double>(dim)) * std::max(1.0, kappa));
}

double pcn_rho_for_lambda(double lambda, double beta_V, double trace_C) {
  if (!(beta_V > 0.0) || !(trace_C > 0.0)) {
    throw ConfigError("pcn_rho_for_lambda: beta_V and Tr(C) must be > 0");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("pcn_rho_for_lambda: lambda must lie in [0, 1]");
  }
  const double lambda_c = 1.0 / (2.0 * beta_V * trace_C);
  if (lambda < lambda_c || lambda == 0.0) return 0.0;
  return std::sqrt(1.0 - lambda_c / lambda);
}

MarkovKernel::MarkovKernel(const KernelSpec& spec, int dim, const Gaussian* reference)
    : spec_(spec), dim_(dim) {
  spec_.validate();
  if (dim_ < 1) throw ConfigError("kernel: dimension must be >= 1");
  switch (spec_.kind) {
    case KernelKind::rwm:
      chol_ = spec_.precond ? cholesky_lower(*spec_.precond, "RWM proposal covariance")
                            : Eigen::MatrixXd::Identity(dim_, dim_);
      break;
    case KernelKind::pcn:
      if (spec_.precond) {
        reference_.emplace(Eigen::VectorXd::Zero(dim_), *spec_.precond);
      } else if (reference) {
        reference_.emplace(*reference);
      } else {
        throw ConfigError("pcn: needs a Gaussian reference (precond or Gaussian base)");
      }
      chol_ = reference_->chol();
      centre_ = reference_->mean();
      break;
    case KernelKind::mala:
    case KernelKind::indep_mixture:
      break;
  }
  if (chol_.size() != 0 && chol_.rows() != dim_) {
    throw ConfigError("kernel: preconditioner dimension mismatch");
  }
}

void MarkovKernel::evaluate(const Target& target, ChainState& s) const {
  s.log_density = target.log_density(s.x);
  if (std::isnan(s.log_density)) throw DomainError("kernel: log-density evaluated to NaN");
  if (spec_.kind == KernelKind::pcn) s.log_reference = reference_->log_pdf(s.x);
  if (spec_.kind == KernelKind::mala && s.log_density > -HUGE_VAL) {
    s.grad.resize(static_cast<std::size_t>(dim_));
    target.grad_log_density(s.x, s.grad);
    for (double g : s.grad) {
      if (!std::isfinite(g)) throw DomainError("mala: non-finite gradient");
    }
  }
}

ChainState MarkovKernel::init(const Target& target, Point x) const {
  ChainState s;
  s.x.assign(x.begin(), x.end());
  evaluate(target, s);
  if (!std::isfinite(s.log_density)) {
    throw StateCorruptionError("kernel: non-finite log-density at the current state");
  }
  return s;
}

void MarkovKernel::propose(const ChainState& from, RandomStream& rng, MutablePoint out) const {
  Eigen::VectorXd z(dim_);
  for (int i = 0; i < dim_; ++i) z[i] = rng.gaussian();
  auto x = as_vector(Point(from.x));
  auto y = as_vector(out);
  switch (spec_.kind) {
    case KernelKind::rwm:
      y = x + spec_.step * Eigen::VectorXd(chol_.triangularView<Eigen::Lower>() * z);
      break;
    case KernelKind::mala:
      y = x + spec_.step * as_vector(Point(from.grad)) + std::sqrt(2.0 * spec_.step) * z;
      break;
    case KernelKind::pcn: {
      const double rho = spec_.step;
      y = centre_ + rho * (x - centre_) +
          std::sqrt(1.0 - rho * rho) * Eigen::VectorXd(chol_.triangularView<Eigen::Lower>() * z);
      break;
    }
    case KernelKind::indep_mixture:
      throw ConfigError("indep_mixture: no proposal density");
  }
}

double MarkovKernel::log_proposal_density(const ChainState& from, Point to) const {
  const double log_2pi = std::log(2.0 * std::numbers::pi);
  auto x = as_vector(Point(from.x));
  auto y = as_vector(to);
  switch (spec_.kind) {
    case KernelKind::rwm: {
      const double s = spec_.step;
      const Eigen::VectorXd z = chol_.triangularView<Eigen::Lower>().solve((y - x) / s);
      const double log_det = 2.0 * chol_.diagonal().array().log().sum() + 2.0 * dim_ * std::log(s);
      return -0.5 * (dim_ * log_2pi + log_det + z.squaredNorm());
    }
    case KernelKind::mala: {
      const double h = spec_.step;
      const Eigen::VectorXd r = y - x - h * as_vector(Point(from.grad));
      return -0.5 * dim_ * (log_2pi + std::log(2.0 * h)) - r.squaredNorm() / (4.0 * h);
    }
    case KernelKind::pcn: {
      const double rho = spec_.step;
      const double s = std::sqrt(1.0 - rho * rho);
      const Eigen::VectorXd mean = centre_ + rho * (x - centre_);
      const Eigen::VectorXd z = chol_.triangularView<Eigen::Lower>().solve((y - mean) / s);
      const double log_det = 2.0 * chol_.diagonal().array().log().sum() + 2.0 * dim_ * std::log(s);
      return -0.5 * (dim_ * log_2pi + log_det + z.squaredNorm());
    }
    case KernelKind::indep_mixture:
      break;
  }
  throw ConfigError("indep_mixture: no proposal density");
}

double MarkovKernel::log_accept_prob(const ChainState& from, const ChainState& to) const {
  if (!(to.log_density > -HUGE_VAL)) return -HUGE_VAL;
  double log_ratio = 0.0;
  switch (spec_.kind) {
    case KernelKind::rwm:
      log_ratio = to.log_density - from.log_density;
      break;
    case KernelKind::mala:
      log_ratio = to.log_density + log_proposal_density(to, from.x) - from.log_density -
                  log_proposal_density(from, to.x);
      break;
    case KernelKind::pcn:
      // The proposal is reversible w.r.t. the reference; only the potential remains.
      log_ratio = (to.log_density - to.log_reference) - (from.log_density - from.log_reference);
      break;
    case KernelKind::indep_mixture:
      return 0.0;
  }
  return std::min(0.0, log_ratio);
}

bool MarkovKernel::step(const Target& target, ChainState& state, ChainState& scratch,
                        RandomStream& rng) const {
  if (!std::isfinite(state.log_density)) {
    throw StateCorruptionError("kernel: non-finite log-density at the current state");
  }
  scratch.x.resize(static_cast<std::size_t>(dim_));
  if (spec_.kind == KernelKind::indep_mixture) {
    if (rng.uniform() >= spec_.step) return false;
    target.sample_exact(rng, scratch.x);
    evaluate(target, scratch);
    std::swap(state, scratch);
    return true;
  }
  propose(state, rng, scratch.x);
  evaluate(target, scratch);
  const double log_alpha = log_accept_prob(state, scratch);
  const double u = rng.uniform();
  if (std::log(u) < log_alpha) {
    std::swap(state, scratch);
    return true;
  }
  return false;
}

namespace {

StepOutcome one_step(const MarkovKernel& kernel, const Target& target, Point x,
                     RandomStream& rng) {
  ChainState state = kernel.init(target, x);
  ChainState scratch;
  const bool accepted = kernel.step(target, state, scratch, rng);
  return {std::move(state.x), accepted};
}

}  // namespace

StepOutcome rwm_step(const Target& target, Point x, double scale, RandomStream& rng) {
  return one_step(MarkovKernel(KernelSpec::rwm(scale), target.dim()), target, x, rng);
}

StepOutcome mala_step(const Target& target, Point x, double h, RandomStream& rng) {
  if (!target.has_gradient()) throw ConfigError("mala: target has no gradient");
  return one_step(MarkovKernel(KernelSpec::mala(h), target.dim()), target, x, rng);
}

StepOutcome pcn_step(const Target& target, Point x, double rho, const Eigen::MatrixXd& cov,
                     RandomStream& rng) {
  KernelSpec spec = KernelSpec::pcn(rho);
  spec.precond = cov;
  return one_step(MarkovKernel(spec, target.dim()), target, x, rng);
}

StepOutcome pcn_step(const std::function<double(Point)>& potential, Point x, double rho,
                     const Eigen::MatrixXd& cov, RandomStream& rng) {
  auto reference = std::make_shared<Gaussian>(Eigen::VectorXd::Zero(cov.rows()), cov);
  FunctionTarget target(static_cast<int>(cov.rows()), [reference, &potential](Point y) {
    return reference->log_pdf(y) - potential(y);
  });
  return pcn_step(target, x, rho, cov, rng);
}

StepOutcome indep_mixture_step(const Target& target, Point x, double gamma, RandomStream& rng) {
  if (!target.has_exact_sampler()) throw ConfigError("indep_mixture: target has no exact sampler");
  return one_step(MarkovKernel(KernelSpec::indep_mixture(gamma), target.dim()), target, x, rng);
}

}  // namespace smc
