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

#include <memory>

#include "smc/gaussian.hpp"
#include "smc/model.hpp"
#include "smc/schedule.hpp"

namespace smc {

/// chi^2(pi_b | pi_a). `infinite` is set when the integral diverges, in
/// which case `value` is +inf.
struct Chi2Divergence {
  double value = 0.0;
  bool infinite = false;
};

/// Closed-form ground truth for geometric tempering between Gaussians.
///
/// Base nu = N(mu0, Sigma0) (normalized); target potential
/// U(x) = 1/2 (x - mu1)^T Sigma1^{-1} (x - mu1) (unnormalized). Every
/// intermediate pi_lambda is Gaussian with precision
/// (1 - lambda) Sigma0^{-1} + lambda Sigma1^{-1}.
class GaussianOracle {
 public:
  GaussianOracle(Gaussian base, Gaussian target, Schedule schedule);

  int dim() const noexcept { return base_->dim(); }
  int horizon() const noexcept { return schedule_.horizon(); }
  const Schedule& schedule() const noexcept { return schedule_; }
  const Gaussian& base() const noexcept { return *base_; }
  const Gaussian& target() const noexcept { return target_; }

  /// Precision, mean and covariance of pi_lambda. Throws PathInfeasibleError
  /// when the precision is not positive definite.
  Eigen::MatrixXd precision_at(double lambda) const;
  Eigen::VectorXd mean_at(double lambda) const;
  Eigen::MatrixXd cov_at(double lambda) const;

  /// log int gamma_lambda dx (equivalently log int g_lambda dnu); 0 at lambda = 0.
  double log_z_at(double lambda) const;
  /// log Z_t, with log Z_{-1} = 0.
  double log_z(int t) const { return log_z_at(schedule_.lambda(t)); }

  /// chi^2(pi_lb | pi_la) between two Gaussian members of the path.
  Chi2Divergence chi2_between(double lambda_prev, double lambda_next) const;
  /// chi^2(pi_t | pi_{t-1}), t in [0, T].
  Chi2Divergence chi2(int t) const {
    return chi2_between(schedule_.lambda(t - 1), schedule_.lambda(t));
  }

  /// Curvature constants of V = U - Q from the two precision matrices:
  /// alpha_Q = min eig(P0), alpha_V = min eig(P1 - P0), beta_V = max eig(P1 - P0).
  Curvature curvature() const;

  void sample_at(double lambda, RandomStream& rng, MutablePoint out) const;

  /// The tempering path with an exact pi_lambda sampler attached.
  std::shared_ptr<GeometricPath> path() const;
  std::shared_ptr<GeometricPath> path(Schedule schedule) const;

 private:
  std::shared_ptr<const Gaussian> base_;
  Gaussian target_;
  std::shared_ptr<const Potential> potential_;
  Schedule schedule_;
};

}  // namespace smc
