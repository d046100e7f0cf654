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

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "smc/gaussian.hpp"
#include "smc/schedule.hpp"

namespace smc {

// Conventions. pi_t = gamma_t / Z_t where gamma_t is the unnormalized
// Lebesgue density exposed by log_density(t, .). The base measure nu is a
// normalized density; g_t = gamma_t / nu, so Z_t = int g_t dnu and
// G_0 = g_0, G_t = g_t / g_{t-1} = gamma_t / gamma_{t-1} for t >= 1.

/// The sequence nu = pi_{-1}, pi_0, ..., pi_T.
///
/// Evaluators are const and stateless, so one instance may be shared by
/// every chain of a run.
class TemperedSequence {
 public:
  virtual ~TemperedSequence() = default;

  /// T: index of the last target.
  virtual int horizon() const = 0;
  virtual int dim() const = 0;

  virtual double log_base(Point x) const = 0;
  virtual void sample_base(RandomStream& rng, MutablePoint out) const = 0;

  /// log gamma_t(x); t = -1 returns log_base(x).
  virtual double log_density(int t, Point x) const = 0;

  /// log G_t(x). Throws DomainError (naming t and x) for NaN or +inf; -inf
  /// is returned as a zero weight.
  double log_incremental_weight(int t, Point x) const;

  virtual bool has_gradient() const { return false; }
  /// Gradient of log gamma_t.
  virtual void grad_log_density(int t, Point x, MutablePoint out) const;

  /// Whether pi_t can be sampled exactly (oracle families only).
  virtual bool has_exact_sampler() const { return false; }
  virtual void sample_exact(int t, RandomStream& rng, MutablePoint out) const;

  /// Gaussian base measure, when nu is one (needed by pCN).
  virtual const Gaussian* base_gaussian() const { return nullptr; }

  /// Tempering exponent lambda_t when the sequence is a tempering path.
  virtual std::optional<double> temperature(int t) const {
    (void)t;
    return std::nullopt;
  }

 protected:
  virtual double raw_log_incremental_weight(int t, Point x) const;
};

/// Target potential U with pi proportional to exp(-U). The gradient is optional.
struct Potential {
  std::function<double(Point)> value;
  std::function<void(Point, MutablePoint)> gradient;
};

/// Draws from pi_lambda for a given exponent lambda (oracle families only).
using ExactSampler = std::function<void(double lambda, RandomStream&, MutablePoint)>;

/// Geometric tempering between a Gaussian base q and pi proportional to exp(-U):
/// log gamma_t = (1 - lambda_t) log q - lambda_t U, and log G_t = -(lambda_t - lambda_{t-1}) V
/// with V = U + log q.
class GeometricPath final : public TemperedSequence {
 public:
  GeometricPath(std::shared_ptr<const Gaussian> base, std::shared_ptr<const Potential> potential,
                Schedule schedule, Curvature curvature = {}, ExactSampler exact = {});

  /// Same base and potential, different exponents. Shares the evaluators.
  std::shared_ptr<GeometricPath> with_schedule(Schedule schedule) const;

  int horizon() const override { return schedule_.horizon(); }
  int dim() const override { return base_->dim(); }
  double log_base(Point x) const override { return base_->log_pdf(x); }
  void sample_base(RandomStream& rng, MutablePoint out) const override { base_->sample(rng, out); }
  double log_density(int t, Point x) const override;

  bool has_gradient() const override { return static_cast<bool>(potential_->gradient); }
  void grad_log_density(int t, Point x, MutablePoint out) const override;

  bool has_exact_sampler() const override { return static_cast<bool>(exact_); }
  void sample_exact(int t, RandomStream& rng, MutablePoint out) const override;

  const Gaussian* base_gaussian() const override { return base_.get(); }
  std::optional<double> temperature(int t) const override { return schedule_.lambda(t); }

  /// V(x) = U(x) - Q(x) with Q = -log q.
  double potential_difference(Point x) const;
  double target_potential(Point x) const { return potential_->value(x); }

  const Schedule& schedule() const noexcept { return schedule_; }
  const Curvature& curvature() const noexcept { return curvature_; }
  const std::shared_ptr<const Gaussian>& base() const noexcept { return base_; }
  const std::shared_ptr<const Potential>& potential() const noexcept { return potential_; }
  const ExactSampler& exact_sampler() const noexcept { return exact_; }

 protected:
  double raw_log_incremental_weight(int t, Point x) const override;

 private:
  std::shared_ptr<const Gaussian> base_;
  std::shared_ptr<const Potential> potential_;
  Schedule schedule_;
  Curvature curvature_;
  ExactSampler exact_;
};

/// Sequence with g_t = g_0 for every t and a Gaussian base: every G_t, t >= 1, equals 1.
class ConstantSequence final : public TemperedSequence {
 public:
  ConstantSequence(std::shared_ptr<const Gaussian> base, std::shared_ptr<const Potential> potential,
                   int horizon);
  int horizon() const override { return horizon_; }
  int dim() const override { return base_->dim(); }
  double log_base(Point x) const override { return base_->log_pdf(x); }
  void sample_base(RandomStream& rng, MutablePoint out) const override { base_->sample(rng, out); }
  double log_density(int t, Point x) const override;
  const Gaussian* base_gaussian() const override { return base_.get(); }

 private:
  std::shared_ptr<const Gaussian> base_;
  std::shared_ptr<const Potential> potential_;
  int horizon_;
};

// Shipped target families.

/// U(x) = 1/2 (x - mean)^T Sigma^{-1} (x - mean), unnormalized, so
/// Z = (2 pi)^{d/2} |Sigma|^{1/2}.
Potential gaussian_potential(const Gaussian& target);

/// Mixture of Gaussians with normalized density; U = -log density, Z = 1.
struct MixtureComponent {
  double weight;
  Gaussian component;
};
Potential gaussian_mixture_potential(std::vector<MixtureComponent> components);
Eigen::VectorXd mixture_mean(const std::vector<MixtureComponent>& components);

/// Product-form log-concave family U(x) = sum_i (a x_i^2 / 2 + b log cosh x_i),
/// a > 0, b >= 0. Hessian eigenvalues lie in [a, a + b].
Potential product_logcosh_potential(double a, double b);
/// log of int exp(-U) over R^d, by 1-d adaptive quadrature raised to the d-th power.
double product_logcosh_log_z(double a, double b, int dim);

}  // namespace smc
