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


#include "smc/harness/build.hpp"

#include <Eigen/Eigenvalues>

#include "smc/error.hpp"

namespace smc::harness {

namespace {

Gaussian make_base(const ModelConfig& m) { return Gaussian(m.base_mean, m.base_cov); }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

Curvature resolve_curvature(const ModelConfig& m) {
  if (m.curvature) return *m.curvature;
  const Eigen::MatrixXd P0 = m.base_cov.inverse();
  if (m.family == "gaussian") {
    const Eigen::MatrixXd P1 = m.target_cov.inverse();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> q(P0), v(P1 - P0);
    return {q.eigenvalues().minCoeff(), v.eigenvalues().minCoeff(), v.eigenvalues().maxCoeff()};
  }
  if (m.family == "product_logcosh") {
    // Hess U lies in [a, a + b] coordinate-wise; exact for an isotropic base.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> q(P0);
    const double lo = q.eigenvalues().minCoeff();
    const double hi = q.eigenvalues().maxCoeff();
    return {lo, m.a - hi, m.a + m.b - lo};
  }
  throw ConfigError("model.curvature: required for family '" + m.family + "'");
}

Schedule build_schedule(const ScheduleConfig& s, const Curvature& curv, int dim) {
  Schedule out;
  if (s.kind == "geometric") {
    out = geometric_schedule(curv, dim, s.c.value_or(default_c(dim)), s.lambda0);
  } else if (s.kind == "equidistant") {
    out = equidistant_schedule(s.T);
  } else if (s.kind == "linear") {
    out = linear_schedule(s.delta, dim);
  } else {
    throw ConfigError("build_schedule: adaptive schedules have no fixed exponents");
  }
  if (s.duplicate_final) {
    auto l = out.lambdas();
    l.push_back(1.0);
    out = Schedule(std::move(l));
  }
  return out;
}

BuiltModel build_model(const ModelConfig& m, const ScheduleConfig& s) {
  BuiltModel b;
  const bool adaptive = s.kind == "adaptive";
  // The geometric rule needs curvature; the other kinds only use it for kernel defaults.
  if (s.kind == "geometric" || m.curvature || m.family != "gaussian_mixture") {
    b.curvature = resolve_curvature(m);
  } else {
    b.curvature = Curvature{};
    b.notes.push_back("curvature unset; kernel defaults use alpha_Q = alpha_V = beta_V = 1");
  }
  if (!adaptive) b.schedule = build_schedule(s, b.curvature, m.dim);
  const Schedule sched = b.schedule.value_or(Schedule({1.0}));

  if (m.family == "gaussian") {
    b.oracle.emplace(make_base(m), Gaussian(m.target_mean, m.target_cov), sched);
    b.path = b.oracle->path();
    b.reference_log_z = b.oracle->log_z_at(1.0);
    b.reference_mean = to_std(m.target_mean);
    if (m.curvature) {
      b.path = std::make_shared<GeometricPath>(b.path->base(), b.path->potential(), sched,
                                               b.curvature, b.path->exact_sampler());
    }
  } else if (m.family == "gaussian_mixture") {
    std::vector<MixtureComponent> comps;
    for (const auto& c : m.components) comps.push_back({c.weight, Gaussian(c.mean, c.cov)});
    b.reference_mean = to_std(mixture_mean(comps));
    auto pot = std::make_shared<const Potential>(gaussian_mixture_potential(std::move(comps)));
    b.path = std::make_shared<GeometricPath>(std::make_shared<const Gaussian>(make_base(m)), pot,
                                             sched, b.curvature);
    b.reference_log_z = 0.0;
  } else {
    auto pot = std::make_shared<const Potential>(product_logcosh_potential(m.a, m.b));
    b.path = std::make_shared<GeometricPath>(std::make_shared<const Gaussian>(make_base(m)), pot,
                                             sched, b.curvature);
    b.reference_log_z = product_logcosh_log_z(m.a, m.b, m.dim);
    b.reference_mean = std::vector<double>(static_cast<std::size_t>(m.dim), 0.0);
  }
  return b;
}

KernelFactory build_kernel(const KernelConfig& k, const BuiltModel& model) {
  const int d = model.dim();
  switch (k.kind) {
    case KernelKind::rwm:
      return constant_kernel(KernelSpec::rwm(k.scale.value_or(default_rwm_scale(d))));
    case KernelKind::mala: {
      if (!model.path->has_gradient()) throw ConfigError("kernel: MALA needs a gradient");
      const Curvature& c = model.curvature;
      return constant_kernel(KernelSpec::mala(k.h.value_or(default_mala_step(d, c.beta_V, c.alpha_V))));
    }
    case KernelKind::pcn: {
      if (k.rho) return constant_kernel(KernelSpec::pcn(*k.rho));
      const double trace_c = model.path->base()->cov().trace();
      const double beta_v = model.curvature.beta_V;
      return [trace_c, beta_v](int t, const TemperedSequence& seq) {
        const double lambda = seq.temperature(t - 1).value_or(1.0);
        return KernelSpec::pcn(pcn_rho_for_lambda(lambda, beta_v, trace_c));
      };
    }
    case KernelKind::indep_mixture:
      if (!model.path->has_exact_sampler()) {
        throw ConfigError("kernel: indep_mixture needs an exact sampler (gaussian family only)");
      }
      return constant_kernel(KernelSpec::indep_mixture(k.gamma));
  }
  throw ConfigError("kernel: unknown kind");
}

}  // namespace smc::harness
