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

#include <Eigen/Dense>
#include <span>

#include "smc/rng.hpp"

namespace smc {

using Point = std::span<const double>;
using MutablePoint = std::span<double>;

inline Eigen::Map<const Eigen::VectorXd> as_vector(Point x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}
inline Eigen::Map<Eigen::VectorXd> as_vector(MutablePoint x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}

/// Lower Cholesky factor of a symmetric positive-definite matrix; throws
/// PathInfeasibleError if the matrix is not positive definite.
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& spd, const char* what);

/// Multivariate normal N(mean, cov) with Cholesky factor cached at construction.
class Gaussian {
 public:
  Gaussian(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  /// Isotropic N(0, variance * I_d).
  static Gaussian isotropic(int dim, double variance = 1.0);

  int dim() const noexcept { return static_cast<int>(mean_.size()); }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  const Eigen::MatrixXd& cov() const noexcept { return cov_; }
  const Eigen::MatrixXd& precision() const noexcept { return precision_; }
  const Eigen::MatrixXd& chol() const noexcept { return chol_; }
  double log_det_cov() const noexcept { return log_det_cov_; }

  double log_pdf(Point x) const;
  void grad_log_pdf(Point x, MutablePoint out) const;
  void sample(RandomStream& rng, MutablePoint out) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd chol_;
  Eigen::MatrixXd precision_;
  double log_det_cov_ = 0.0;
  double log_norm_ = 0.0;
};

}  // namespace smc
