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

#include "smc/model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "smc/error.hpp"
#include "smc/weights.hpp"

namespace smc {

namespace {

std::string describe_point(Point x) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  const std::size_t shown = std::min<std::size_t>(x.size(), 4);
  for (std::size_t i = 0; i < shown; ++i) os << (i ? ", " : "") << x[i];
  if (shown < x.size()) os << ", ...";
  os << ')';
  return os.str();
}

// log(cosh(x)) without overflow for large |x|.
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

}  // namespace

double TemperedSequence::log_incremental_weight(int t, Point x) const {
  const double lw = raw_log_incremental_weight(t, x);
  // -inf is a zero weight (x outside the support of g_t); NaN and +inf are errors.
  if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity()) {
    throw DomainError("non-finite log incremental weight at t=" + std::to_string(t) +
                      ", x=" + describe_point(x));
  }
  return lw;
}

double TemperedSequence::raw_log_incremental_weight(int t, Point x) const {
  return log_density(t, x) - log_density(t - 1, x);
}

void TemperedSequence::grad_log_density(int, Point, MutablePoint) const {
  throw ConfigError("this sequence does not provide gradients");
}

void TemperedSequence::sample_exact(int, RandomStream&, MutablePoint) const {
  throw ConfigError("this sequence has no exact sampler");
}

GeometricPath::GeometricPath(std::shared_ptr<const Gaussian> base,
                             std::shared_ptr<const Potential> potential, Schedule schedule,
                             Curvature curvature, ExactSampler exact)
    : base_(std::move(base)),
      potential_(std::move(potential)),
      schedule_(std::move(schedule)),
      curvature_(curvature),
      exact_(std::move(exact)) {
  if (!base_ || !potential_ || !potential_->value) {
    throw ConfigError("GeometricPath: base and potential are required");
  }
}

std::shared_ptr<GeometricPath> GeometricPath::with_schedule(Schedule schedule) const {
  return std::make_shared<GeometricPath>(base_, potential_, std::move(schedule), curvature_,
                                         exact_);
}

double GeometricPath::log_density(int t, Point x) const {
  const double l = schedule_.lambda(t);
  const double log_q = base_->log_pdf(x);
  if (l == 0.0) return log_q;
  return (1.0 - l) * log_q - l * potential_->value(x);
}

double GeometricPath::potential_difference(Point x) const {
  return potential_->value(x) + base_->log_pdf(x);
}

double GeometricPath::raw_log_incremental_weight(int t, Point x) const {
  const double delta = schedule_.step(t);
  if (delta == 0.0) return 0.0;
  return -delta * potential_difference(x);
}

void GeometricPath::grad_log_density(int t, Point x, MutablePoint out) const {
  if (!potential_->gradient) throw ConfigError("GeometricPath: potential has no gradient");
  const double l = schedule_.lambda(t);
  std::vector<double> grad_u(x.size());
  base_->grad_log_pdf(x, out);
  potential_->gradient(x, grad_u);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (1.0 - l) * out[i] - l * grad_u[i];
}

void GeometricPath::sample_exact(int t, RandomStream& rng, MutablePoint out) const {
  if (!exact_) throw ConfigError("GeometricPath: no exact sampler attached");
  exact_(schedule_.lambda(t), rng, out);
}

ConstantSequence::ConstantSequence(std::shared_ptr<const Gaussian> base,
                                   std::shared_ptr<const Potential> potential, int horizon)
    : base_(std::move(base)), potential_(std::move(potential)), horizon_(horizon) {
  if (!base_ || !potential_ || !potential_->value) {
    throw ConfigError("ConstantSequence: base and potential are required");
  }
  if (horizon_ < 0) throw ConfigError("ConstantSequence: horizon must be >= 0");
}

double ConstantSequence::log_density(int t, Point x) const {
  if (t == -1) return base_->log_pdf(x);
  return -potential_->value(x);
}

Potential gaussian_potential(const Gaussian& target) {
  auto g = std::make_shared<const Gaussian>(target);
  const double log_norm =
      -0.5 * (g->dim() * std::log(2.0 * std::numbers::pi) + g->log_det_cov());
  Potential p;
  p.value = [g, log_norm](Point x) { return -(g->log_pdf(x) - log_norm); };
  p.gradient = [g](Point x, MutablePoint out) {
    g->grad_log_pdf(x, out);
    for (double& v : out) v = -v;
  };
  return p;
}

Potential gaussian_mixture_potential(std::vector<MixtureComponent> components) {
  if (components.empty()) throw ConfigError("mixture: at least one component required");
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.weight > 0.0)) throw ConfigError("mixture: weights must be positive");
    total += c.weight;
  }
  auto comps = std::make_shared<std::vector<MixtureComponent>>(std::move(components));
  for (auto& c : *comps) c.weight /= total;

  Potential p;
  p.value = [comps](Point x) {
    std::vector<double> terms;
    terms.reserve(comps->size());
    for (const auto& c : *comps) terms.push_back(std::log(c.weight) + c.component.log_pdf(x));
    return -log_sum_exp(terms);
  };
  p.gradient = [comps](Point x, MutablePoint out) {
    std::vector<double> terms;
    terms.reserve(comps->size());
    for (const auto& c : *comps) terms.push_back(std::log(c.weight) + c.component.log_pdf(x));
    const double lse = log_sum_exp(terms);
    std::fill(out.begin(), out.end(), 0.0);
    std::vector<double> g(x.size());
    for (std::size_t k = 0; k < comps->size(); ++k) {
      const double r = std::exp(terms[k] - lse);
      (*comps)[k].component.grad_log_pdf(x, g);
      for (std::size_t i = 0; i < x.size(); ++i) out[i] -= r * g[i];
    }
  };
  return p;
}

Eigen::VectorXd mixture_mean(const std::vector<MixtureComponent>& components) {
  double total = 0.0;
  for (const auto& c : components) total += c.weight;
  Eigen::VectorXd m = Eigen::VectorXd::Zero(components.front().component.dim());
  for (const auto& c : components) m += (c.weight / total) * c.component.mean();
  return m;
}

Potential product_logcosh_potential(double a, double b) {
  if (!(a > 0.0) || !(b >= 0.0)) throw ConfigError("product_logcosh: need a > 0, b >= 0");
  Potential p;
  p.value = [a, b](Point x) {
    double u = 0.0;
    for (double xi : x) u += 0.5 * a * xi * xi + b * log_cosh(xi);
    return u;
  };
  p.gradient = [a, b](Point x, MutablePoint out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * std::tanh(x[i]);
  };
  return p;
}

double product_logcosh_log_z(double a, double b, int dim) {
  auto integrand = [a, b](double x) { return std::exp(-0.5 * a * x * x - b * log_cosh(x)); };
  const double inf = std::numeric_limits<double>::infinity();
  const double one_d =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -inf, inf, 15,
                                                                      1e-14);
  return dim * std::log(one_d);
}

}  // namespace smc
