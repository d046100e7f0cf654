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

#include "smc/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "smc/error.hpp"

namespace smc {

Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& spd, const char* what) {
  if (spd.rows() != spd.cols() || spd.rows() == 0) {
    throw ConfigError(std::string(what) + ": matrix must be square and non-empty");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(spd);
  if (llt.info() != Eigen::Success) {
    throw PathInfeasibleError(std::string(what) + ": matrix is not positive definite");
  }
  return llt.matrixL();
}

Gaussian::Gaussian(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (cov_.rows() != mean_.size()) throw ConfigError("Gaussian: mean/covariance size mismatch");
  chol_ = cholesky_lower(cov_, "Gaussian covariance");
  log_det_cov_ = 2.0 * chol_.diagonal().array().log().sum();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(dim(), dim());
  const Eigen::MatrixXd chol_inv = chol_.triangularView<Eigen::Lower>().solve(identity);
  precision_ = chol_inv.transpose() * chol_inv;
  log_norm_ = -0.5 * (dim() * std::log(2.0 * std::numbers::pi) + log_det_cov_);
}

Gaussian Gaussian::isotropic(int dim, double variance) {
  return Gaussian(Eigen::VectorXd::Zero(dim), variance * Eigen::MatrixXd::Identity(dim, dim));
}

double Gaussian::log_pdf(Point x) const {
  const Eigen::VectorXd z =
      chol_.triangularView<Eigen::Lower>().solve(as_vector(x) - mean_);
  return log_norm_ - 0.5 * z.squaredNorm();
}

void Gaussian::grad_log_pdf(Point x, MutablePoint out) const {
  as_vector(out) = -precision_ * (as_vector(x) - mean_);
}

void Gaussian::sample(RandomStream& rng, MutablePoint out) const {
  Eigen::VectorXd z(dim());
  for (int i = 0; i < dim(); ++i) z[i] = rng.gaussian();
  as_vector(out) = mean_ + chol_.triangularView<Eigen::Lower>() * z;
}

}  // namespace smc
