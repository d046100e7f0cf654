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

#include "smc/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "smc/error.hpp"

namespace smc {

namespace {

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

Eigen::LLT<Eigen::MatrixXd> factor_or_throw(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw PathInfeasibleError(what);
  return llt;
}

}  // namespace

GaussianOracle::GaussianOracle(Gaussian base, Gaussian target, Schedule schedule)
    : base_(std::make_shared<const Gaussian>(std::move(base))),
      target_(std::move(target)),
      potential_(std::make_shared<const Potential>(gaussian_potential(target_))),
      schedule_(std::move(schedule)) {
  if (base_->dim() != target_.dim()) throw ConfigError("GaussianOracle: dimension mismatch");
  for (double l : schedule_.lambdas()) (void)precision_at(l);
}

Eigen::MatrixXd GaussianOracle::precision_at(double lambda) const {
  Eigen::MatrixXd prec = (1.0 - lambda) * base_->precision() + lambda * target_.precision();
  factor_or_throw(prec, "GaussianOracle: precision along the path is not positive definite");
  return prec;
}

Eigen::VectorXd GaussianOracle::mean_at(double lambda) const {
  const Eigen::MatrixXd prec = precision_at(lambda);
  const Eigen::VectorXd lin = (1.0 - lambda) * base_->precision() * base_->mean() +
                              lambda * target_.precision() * target_.mean();
  return prec.llt().solve(lin);
}

Eigen::MatrixXd GaussianOracle::cov_at(double lambda) const {
  const Eigen::MatrixXd prec = precision_at(lambda);
  return prec.llt().solve(Eigen::MatrixXd::Identity(dim(), dim()));
}

double GaussianOracle::log_z_at(double lambda) const {
  if (lambda == 0.0) return 0.0;
  // gamma_lambda = q^{1-lambda} exp(-lambda U) = exp(-x'Ax/2 + b'x - c/2) * q-normalizer^{1-lambda}.
  const Eigen::MatrixXd& p0 = base_->precision();
  const Eigen::MatrixXd& p1 = target_.precision();
  const Eigen::VectorXd& m0 = base_->mean();
  const Eigen::VectorXd& m1 = target_.mean();
  const Eigen::MatrixXd a = (1.0 - lambda) * p0 + lambda * p1;
  const Eigen::VectorXd b = (1.0 - lambda) * p0 * m0 + lambda * p1 * m1;
  const double c = (1.0 - lambda) * m0.dot(p0 * m0) + lambda * m1.dot(p1 * m1);
  const auto llt = factor_or_throw(a, "GaussianOracle: precision is not positive definite");
  const double log_2pi = std::log(2.0 * std::numbers::pi);
  const double d = static_cast<double>(dim());
  const double gauss_integral = 0.5 * b.dot(llt.solve(b)) - 0.5 * c + 0.5 * d * log_2pi -
                                0.5 * log_det_from_llt(llt);
  const double base_norm = -0.5 * (d * log_2pi + base_->log_det_cov());
  return gauss_integral + (1.0 - lambda) * base_norm;
}

Chi2Divergence GaussianOracle::chi2_between(double lambda_prev, double lambda_next) const {
  if (lambda_prev == lambda_next) return {};
  const Eigen::MatrixXd a_prev = precision_at(lambda_prev);
  const Eigen::MatrixXd a_next = precision_at(lambda_next);
  const Eigen::VectorXd m_prev = mean_at(lambda_prev);
  const Eigen::VectorXd m_next = mean_at(lambda_next);

  // int p_next^2 / p_prev = |A_n| |A_p|^{-1/2} |B|^{-1/2} exp(h'B^{-1}h/2 - k/2),
  // B = 2 A_n - A_p, h = 2 A_n m_n - A_p m_p, k = 2 m_n'A_n m_n - m_p'A_p m_p.
  const Eigen::MatrixXd b = 2.0 * a_next - a_prev;
  Eigen::LLT<Eigen::MatrixXd> llt_b(b);
  if (llt_b.info() != Eigen::Success) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  const Eigen::VectorXd h = 2.0 * a_next * m_next - a_prev * m_prev;
  const double k = 2.0 * m_next.dot(a_next * m_next) - m_prev.dot(a_prev * m_prev);
  const double log_det_next = log_det_from_llt(a_next.llt());
  const double log_det_prev = log_det_from_llt(a_prev.llt());
  const double log_int = log_det_next - 0.5 * log_det_prev - 0.5 * log_det_from_llt(llt_b) +
                         0.5 * h.dot(llt_b.solve(h)) - 0.5 * k;
  return {std::expm1(log_int), false};
}

Curvature GaussianOracle::curvature() const {
  const Eigen::MatrixXd& p0 = base_->precision();
  const Eigen::MatrixXd diff = target_.precision() - p0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eq(p0, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ev(diff, Eigen::EigenvaluesOnly);
  return {eq.eigenvalues().minCoeff(), ev.eigenvalues().minCoeff(), ev.eigenvalues().maxCoeff()};
}

void GaussianOracle::sample_at(double lambda, RandomStream& rng, MutablePoint out) const {
  const Eigen::MatrixXd cov = cov_at(lambda);
  const Eigen::VectorXd mean = mean_at(lambda);
  const Eigen::MatrixXd chol = cholesky_lower(cov, "GaussianOracle covariance");
  Eigen::VectorXd z(dim());
  for (int i = 0; i < dim(); ++i) z[i] = rng.gaussian();
  as_vector(out) = mean + chol * z;
}

std::shared_ptr<GeometricPath> GaussianOracle::path() const { return path(schedule_); }

std::shared_ptr<GeometricPath> GaussianOracle::path(Schedule schedule) const {
  // Pre-factor every member of the schedule so the sampler is cheap per draw.
  struct Member {
    double lambda;
    Gaussian law;
  };
  auto members = std::make_shared<std::vector<Member>>();
  for (double l : schedule.lambdas()) members->push_back({l, Gaussian(mean_at(l), cov_at(l))});
  auto self = std::make_shared<const GaussianOracle>(*this);
  ExactSampler exact = [members, self](double lambda, RandomStream& rng, MutablePoint out) {
    if (lambda == 0.0) {
      self->base().sample(rng, out);
      return;
    }
    for (const auto& m : *members) {
      if (m.lambda == lambda) {
        m.law.sample(rng, out);
        return;
      }
    }
    self->sample_at(lambda, rng, out);
  };
  return std::make_shared<GeometricPath>(base_, potential_, std::move(schedule), curvature(),
                                         std::move(exact));
}

}  // namespace smc
