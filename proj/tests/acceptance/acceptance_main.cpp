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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Arguments select criteria by name.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "json.hpp"
#include "smc/error.hpp"
#include "smc/estimators.hpp"
#include "smc/harness/experiment.hpp"
#include "smc/oracle.hpp"
#include "smc/planner.hpp"
#include "smc/samplers.hpp"

using namespace smc;
using Json = nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double var_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// Linear-interpolation quantile of a sample.
double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double iqr(const std::vector<double>& v) { return quantile(v, 0.75) - quantile(v, 0.25); }

// Asymptotic Kolmogorov distribution with the small-sample correction.
double ks_p_value(double D, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * D;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    p += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

Gaussian target_pair(int d, double var) {
  return Gaussian(Eigen::VectorXd::Constant(d, 0.5), var * Eigen::MatrixXd::Identity(d, d));
}

harness::RunOptions in_memory() {
  harness::RunOptions o;
  o.write_files = false;
  return o;
}

// ---------------------------------------------------------------------------

Outcome unbiasedness() {
  const int d = 2;
  const Gaussian base = Gaussian::isotropic(d);
  // With c = 1/8 the horizon shrinks as the target variance grows; pick it so that T = 5.
  const double c = 0.125;
  auto target_with = [](double v) {
    return Gaussian(Eigen::Vector2d(1.0, -0.5), v * Eigen::MatrixXd::Identity(2, 2));
  };
  auto horizon_at = [&](double v) {
    const GaussianOracle probe(base, target_with(v), equidistant_schedule(1));
    return geometric_schedule(probe.curvature(), d, c).horizon();
  };
  double lo = 0.01, hi = 0.99;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (horizon_at(mid) > 5 ? lo : hi) = mid;
  }
  const Gaussian target = target_with(hi);
  const GaussianOracle probe(base, target, equidistant_schedule(1));
  const Schedule sched = geometric_schedule(probe.curvature(), d, c);
  if (sched.horizon() != 5) return {false, "could not build a T = 5 schedule"};
  const GaussianOracle o(base, target, sched);
  const double truth = o.log_z(o.horizon());

  std::string detail;
  bool pass = true;
  for (auto alg : {Algorithm::standard, Algorithm::wastefree}) {
    std::vector<double> ratios;
    for (int s = 0; s < 400; ++s) {
      RunConfig c;
      c.sequence = o.path();
      c.kernel = constant_kernel(KernelSpec::rwm(default_rwm_scale(d)));
      c.algorithm = alg;
      c.M = alg == Algorithm::standard ? 2000 : 400;
      c.P = {5};
      c.seed = static_cast<std::uint64_t>(s) + 1000;
      const RunRecord r = run_smc(c);
      if (!r.ok()) return {false, "run aborted"};
      ratios.push_back(std::exp(r.log_z - truth));
    }
    const double m = mean_of(ratios);
    const double se = std::sqrt(var_of(ratios) / static_cast<double>(ratios.size()));
    const double z = (m - 1.0) / se;
    pass = pass && std::abs(z) <= 4.0;
    detail += to_string(alg) + ": target var " + fmt("%.3f", hi) + ", mean Z/Z_true=" + fmt("%.5f", m) + " se=" + fmt("%.5f", se) +
              " z=" + fmt("%.2f", z) + "; ";
  }
  return {pass, detail};
}

Outcome schedule_chi2() {
  bool pass = true;
  std::string detail;
  for (int d : {2, 4, 16, 64}) {
    Eigen::VectorXd var(d);
    for (int i = 0; i < d; ++i) var[i] = 0.2 + 0.7 * i / std::max(1, d - 1);
    const Gaussian base = Gaussian::isotropic(d, 1.0);
    const Gaussian target(Eigen::VectorXd::Constant(d, 0.7), var.asDiagonal().toDenseMatrix());
    const double c = default_c(d);
    const GaussianOracle probe(base, target, equidistant_schedule(1));
    const GaussianOracle o(base, target, geometric_schedule(probe.curvature(), d, c));
    const double bound = c * c * (1.0 + 24.0 / std::sqrt(static_cast<double>(d)));
    double worst = 0.0;
    // t = 0 compares pi_0 with nu; the bound concerns the tempering steps t >= 1.
    for (int t = 1; t <= o.horizon(); ++t) {
      const Chi2Divergence chi = o.chi2(t);
      if (chi.infinite) {
        worst = INFINITY;
        break;
      }
      worst = std::max(worst, chi.value);
    }
    const bool ok = worst <= bound && worst <= 1.0;
    pass = pass && ok;
    detail += "d=" + std::to_string(d) + " T=" + std::to_string(o.horizon()) +
              " max chi2=" + fmt("%.3e", worst) + " bound=" + fmt("%.3e", bound) + "; ";
  }
  return {pass, detail};
}

Outcome wastefree_z_guarantee() {
  PlanInput in;
  in.epsilon = 0.5;
  in.T = 3;
  in.gamma = 0.5;
  const PlanResult plan = plan_wastefree_z(in);
  const int P = static_cast<int>(plan.P.front());
  const GaussianOracle o(Gaussian::isotropic(2), target_pair(2, 0.5), equidistant_schedule(3));
  const double truth = o.log_z(o.horizon());
  int good = 0;
  std::vector<double> errs;
  for (int s = 0; s < 100; ++s) {
    RunConfig c;
    c.sequence = o.path();
    c.kernel = constant_kernel(KernelSpec::indep_mixture(0.5));
    c.algorithm = Algorithm::wastefree;
    c.M = 1;
    c.P = {P};
    c.seed = static_cast<std::uint64_t>(s) + 2000;
    c.execution = Execution::parallel;
    const RunRecord r = run_smc(c);
    const double e = r.ok() ? std::abs(std::expm1(r.log_z - truth)) : INFINITY;
    errs.push_back(e);
    good += e < in.epsilon;
  }
  return {good >= 75, "P=" + std::to_string(P) + ": " + std::to_string(good) +
                          "/100 runs with |Z/Z_true-1|<0.5, median error " +
                          fmt("%.4f", quantile(errs, 0.5))};
}

Outcome median_robustness() {
  Json doc = {{"experiment", "fig2"},
              {"fig2", {{"dims", {4, 16}}}},
              {"replication", {{"n_seeds", 50}, {"master_seed", 3}}}};
  const auto res = harness::run_experiment(harness::parse_config(doc), in_memory());
  std::map<std::string, std::vector<double>> errs;
  for (const auto& row : res.rows) {
    if (row.arm.find("heavy") == std::string::npos) continue;
    if (row.status != "ok") return {false, "row failed: " + row.status};
    errs[row.arm + " " + row.algorithm + " " + row.estimator].push_back(std::abs(row.rel_error));
  }
  bool pass = true;
  std::string detail;
  for (int d : {4, 16}) {
    for (const char* alg : {"wastefree", "standard"}) {
      const std::string key = "d=" + std::to_string(d) + "/heavy " + alg;
      const auto& means = errs[key + " log_z_means"];
      const auto& meds = errs[key + " log_z_medians"];
      if (means.size() != 50 || meds.size() != 50) return {false, "missing rows for " + key};
      const double a = iqr(meds), b = iqr(means);
      pass = pass && a <= b;
      detail += key + ": IQR med=" + fmt("%.4f", a) + " means=" + fmt("%.4f", b) + "; ";
    }
  }
  return {pass, detail};
}

Outcome greedy_allocation() {
  const auto cfg = harness::parse_config(Json{{"experiment", "fig1"}});
  const auto res = harness::run_experiment(cfg, in_memory());
  const auto& Cs = cfg.fig1.C_values;
  const std::size_t n = static_cast<std::size_t>(cfg.replication.n_seeds);
  std::map<std::string, std::vector<double>> sq;
  for (const auto& name : Cs) sq["C=" + std::to_string(name)].assign(n, 0.0);
  for (const auto& row : res.rows) {
    if (row.estimator.rfind("moment_mean", 0) != 0) continue;
    if (row.status != "ok") return {false, "row failed: " + row.status};
    sq[row.arm][static_cast<std::size_t>(row.replicate)] += row.error * row.error;
  }
  std::vector<std::vector<double>*> cols;
  for (int C : Cs) cols.push_back(&sq["C=" + std::to_string(C)]);
  const auto idx_of = [&](int C) {
    return static_cast<std::size_t>(std::find(Cs.begin(), Cs.end(), C) - Cs.begin());
  };
  const std::size_t i1 = idx_of(1), i4 = idx_of(4), ilast = Cs.size() - 1;

  auto stats = [&](const std::vector<std::size_t>& pick) {
    std::vector<double> mse(cols.size(), 0.0);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      for (auto r : pick) mse[k] += (*cols[k])[r];
      mse[k] /= static_cast<double>(pick.size());
    }
    const double gain = mse[i1] - mse[i4];
    const double rise = mse[ilast] - *std::min_element(mse.begin(), mse.end());
    return std::make_tuple(mse, gain, rise);
  };
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  const auto [mse, gain, rise] = stats(all);

  // Paired bootstrap over replicates, one-sided 95% lower bounds.
  RandomStream rng(77, 0, 0, StreamPurpose::test);
  std::vector<double> gains, rises;
  std::vector<std::size_t> pick(n);
  for (int b = 0; b < 2000; ++b) {
    for (auto& p : pick) p = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)) % n;
    const auto [m, g, r] = stats(pick);
    gains.push_back(g);
    rises.push_back(r);
  }
  const double gain_lo = quantile(gains, 0.05), rise_lo = quantile(rises, 0.05);
  std::string detail = "MSE";
  for (std::size_t k = 0; k < Cs.size(); ++k) {
    detail += " C=" + std::to_string(Cs[k]) + ":" + fmt("%.4g", mse[k]);
  }
  detail += "; MSE(1)-MSE(4)=" + fmt("%.3g", gain) + " (5% bound " + fmt("%.3g", gain_lo) +
            "); MSE(" + std::to_string(Cs.back()) + ")-min=" + fmt("%.3g", rise) + " (5% bound " +
            fmt("%.3g", rise_lo) + ")";
  return {gain_lo > 0.0 && rise_lo > 0.0, detail};
}

Outcome mixture_kernel_variance() {
  const double gamma = 0.5;
  const int P = 10000, reps = 200, max_lag = 5;
  const Gaussian law = Gaussian::isotropic(1);
  const FunctionTarget target(
      1, [&](Point x) { return law.log_pdf(x); }, {},
      [&](RandomStream& rng, MutablePoint out) { law.sample(rng, out); });
  const MarkovKernel kernel(KernelSpec::indep_mixture(gamma), 1);
  std::vector<double> means(reps);
  std::vector<std::vector<double>> acf(max_lag + 1, std::vector<double>(reps));
  std::vector<double> xs(P);
  for (int r = 0; r < reps; ++r) {
    RandomStream rng(4242, 0, static_cast<std::uint64_t>(r), StreamPurpose::test);
    std::vector<double> x0(1);
    law.sample(rng, x0);
    ChainState s = kernel.init(target, x0);
    ChainState scratch;
    for (int p = 0; p < P; ++p) {
      if (p > 0) kernel.step(target, s, scratch, rng);
      xs[p] = s.x[0];
    }
    const double m = mean_of(xs);
    means[r] = m;
    double c0 = 0.0;
    for (double x : xs) c0 += (x - m) * (x - m);
    for (int k = 1; k <= max_lag; ++k) {
      double ck = 0.0;
      for (int p = 0; p + k < P; ++p) ck += (xs[p] - m) * (xs[p + k] - m);
      acf[k][r] = ck / c0;
    }
  }
  const double expected = (2.0 - gamma) / gamma;
  const double avar = P * var_of(means);
  bool pass = std::abs(avar / expected - 1.0) <= 0.15;
  std::string detail = "P*Var=" + fmt("%.4f", avar) + " (expected 3, 15% tolerance); acf";
  for (int k = 1; k <= max_lag; ++k) {
    const double a = mean_of(acf[k]);
    const double se = std::sqrt(var_of(acf[k]) / reps);
    const double want = std::pow(1.0 - gamma, k);
    pass = pass && std::abs(a - want) <= 3.0 * se;
    detail += " k=" + std::to_string(k) + ":" + fmt("%.4f", a) + "(" + fmt("%.4f", want) + ")";
  }
  return {pass, detail};
}

Outcome monte_carlo_rate() {
  const auto cfg = harness::load_config(SMC_CONFIG_DIR "/rate_sweep.json");
  const auto res = harness::run_experiment(cfg, in_memory());
  std::map<int, std::vector<double>> errs;
  for (const auto& row : res.rows) {
    if (row.estimator != "log_z_means") continue;
    if (row.status != "ok") return {false, "row failed: " + row.status};
    errs[row.P].push_back(std::abs(row.rel_error));
  }
  if (errs.size() != 3) return {false, "expected three chain lengths"};
  std::vector<double> lx, ly;
  std::string detail;
  for (const auto& [P, e] : errs) {
    lx.push_back(std::log(static_cast<double>(P)));
    ly.push_back(std::log(quantile(e, 0.5)));
    detail += "P=" + std::to_string(P) + " median=" + fmt("%.4g", quantile(e, 0.5)) + "; ";
  }
  const double mx = mean_of(lx), my = mean_of(ly);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  return {std::abs(slope + 0.5) <= 0.15, detail + "slope=" + fmt("%.3f", slope)};
}

Outcome example1_tails() {
  const double sigma2 = 2.0;
  const std::size_t n = 100000;
  bool pass = true;
  std::string detail;
  for (int d : {1, 4}) {
    const GaussianOracle o(Gaussian::isotropic(d),
                           Gaussian(Eigen::VectorXd::Zero(d), sigma2 * Eigen::MatrixXd::Identity(d, d)),
                           linear_schedule(0.5, d));
    const int t = 1;
    const double lp = o.schedule().lambda(t - 1), dl = o.schedule().step(t);
    const double s2 = o.cov_at(lp)(0, 0);
    const auto path = o.path();
    const std::vector<double> zero(static_cast<std::size_t>(d), 0.0);
    const double shift = path->log_incremental_weight(t, zero);
    const double scale = dl * (1.0 - 1.0 / sigma2) / 2.0 * s2;
    RandomStream rng(99, 0, static_cast<std::uint64_t>(d), StreamPurpose::test);
    std::vector<double> x(static_cast<std::size_t>(d)), y(n);
    for (auto& v : y) {
      o.sample_at(lp, rng, x);
      v = (path->log_incremental_weight(t, x) - shift) / scale;
    }
    std::sort(y.begin(), y.end());
    const boost::math::chi_squared law(d);
    double D = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double F = boost::math::cdf(law, std::max(y[i], 0.0));
      D = std::max({D, F - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - F});
    }
    const double p = ks_p_value(D, n);
    pass = pass && p > 0.01;
    detail += "d=" + std::to_string(d) + " D=" + fmt("%.5f", D) + " p=" + fmt("%.3f", p) + "; ";
  }
  return {pass, detail};
}

double brute_force_median(const std::vector<double>& x) {
  const std::size_t J = x.size();
  for (std::size_t i = 0; i < J; ++i) {
    std::size_t le = 0, ge = 0;
    for (double v : x) {
      le += v <= x[i];
      ge += v >= x[i];
    }
    if (2 * le >= J && 2 * ge >= J) return x[i];
  }
  return NAN;
}

Outcome exactness() {
  std::vector<std::string> failures;
  // Trivial sequence.
  {
    auto base = std::make_shared<const Gaussian>(Gaussian::isotropic(3));
    auto pot = std::make_shared<const Potential>(gaussian_potential(Gaussian::isotropic(3, 0.7)));
    auto seq = std::make_shared<const ConstantSequence>(base, pot, 6);
    for (auto alg : {Algorithm::standard, Algorithm::wastefree}) {
      for (std::uint64_t s = 0; s < 10; ++s) {
        RunConfig c;
        c.sequence = seq;
        c.kernel = constant_kernel(KernelSpec::rwm(default_rwm_scale(3)));
        c.algorithm = alg;
        c.M = 25;
        c.P = {4};
        c.seed = s;
        const RunRecord r = run_smc(c);
        if (!r.ok() || std::abs(r.log_z - r.iterations.front().log_ratio) > 1e-12) {
          failures.push_back("trivial sequence");
        }
      }
    }
  }
  // Greedy with constant P_t against waste-free.
  {
    const GaussianOracle o(Gaussian::isotropic(2), target_pair(2, 0.5), equidistant_schedule(5));
    for (std::uint64_t s = 0; s < 10; ++s) {
      RunConfig c;
      c.sequence = o.path();
      c.kernel = constant_kernel(KernelSpec::rwm(default_rwm_scale(2)));
      c.M = 8;
      c.P = {7};
      c.seed = s;
      const RunRecord wf = run_smc(c);
      c.algorithm = Algorithm::greedy;
      c.P = std::vector<int>(6, 7);
      const RunRecord g = run_smc(c);
      bool same = wf.log_z == g.log_z && wf.final_cloud.positions == g.final_cloud.positions &&
                  wf.final_cloud.log_weights == g.final_cloud.log_weights &&
                  wf.markov_steps == g.markov_steps;
      for (std::size_t t = 0; t < wf.iterations.size(); ++t) {
        same = same && wf.iterations[t].log_ratio == g.iterations[t].log_ratio;
      }
      if (!same) failures.push_back("greedy bit identity");
    }
  }
  // Median rule.
  {
    std::size_t checked = 0;
    for (std::size_t J = 1; J <= 6; ++J) {
      std::size_t total = 1;
      for (std::size_t k = 0; k < J; ++k) total *= 3;
      std::vector<double> x(J);
      for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t k = 0; k < J; ++k, c /= 3) x[k] = 1.0 + static_cast<double>(c % 3);
        if (median_rule(x) != brute_force_median(x)) failures.push_back("median rule");
        ++checked;
      }
    }
    if (checked != 1092) failures.push_back("median enumeration");
  }
  // Detailed balance on a non-Gaussian target.
  {
    const Potential pot = product_logcosh_potential(0.8, 1.5);
    const FunctionTarget target(
        2, [&](Point x) { return -pot.value(x); },
        [&](Point x, MutablePoint out) {
          pot.gradient(x, out);
          for (auto& v : out) v = -v;
        });
    const Gaussian ref = Gaussian::isotropic(2, 1.5);
    double worst = 0.0;
    for (const auto& spec : {KernelSpec::rwm(0.9), KernelSpec::mala(0.4), KernelSpec::pcn(0.6)}) {
      const MarkovKernel k(spec, 2, &ref);
      RandomStream rng(31, 0, 0, StreamPurpose::test);
      auto flux = [&](Point x, Point y) {
        const ChainState sx = k.init(target, x), sy = k.init(target, y);
        return sx.log_density + k.log_proposal_density(sx, y) + k.log_accept_prob(sx, sy);
      };
      for (int i = 0; i < 200; ++i) {
        const std::vector<double> x{2.0 * rng.gaussian(), 2.0 * rng.gaussian()};
        const std::vector<double> y{2.0 * rng.gaussian(), 2.0 * rng.gaussian()};
        const double a = flux(x, y), b = flux(y, x);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
      }
    }
    if (worst > 1e-10) failures.push_back("detailed balance (" + fmt("%.2e", worst) + ")");
  }
  std::string detail = failures.empty() ? "trivial sequence, greedy identity, 1092 median arrays, "
                                          "detailed balance for rwm/mala/pcn"
                                        : "failed:";
  for (const auto& f : failures) detail += " " + f;
  return {failures.empty(), detail};
}

Outcome planner_golden() {
  std::ifstream f(SMC_GOLDEN_FILE);
  if (!f) return {false, "golden file missing"};
  const Json golden = Json::parse(f);
  int matched = 0, total = 0;
  std::string detail;
  for (const auto& c : golden["cases"]) {
    ++total;
    const std::string op = c["op"];
    const Json& a = c["args"];
    const Json& v = c["value"];
    if (op == "mixing_time") {
      matched += mixing_time_from_gap(a["xi"], a["omega"], a["gamma"]) == v.get<std::int64_t>();
      continue;
    }
    PlanInput in;
    in.epsilon = a["epsilon"];
    in.eta = a.value("eta", in.eta);
    in.T = a["T"];
    in.M = a.value("M", 1);
    in.chi_bar_sq = a.value("chi_bar_sq", 2.0);
    in.gamma = a["gamma"].get<double>();
    PlanResult r;
    if (op == "standard_moments") r = plan_standard_moments(in);
    else if (op == "wastefree_moments") r = plan_wastefree_moments(in);
    else if (op == "greedy_moments") r = plan_greedy_moments(in);
    else if (op == "wastefree_z") r = plan_wastefree_z(in);
    else if (op == "medians_z") r = plan_medians_z(in);
    else if (op == "standard_z_means") r = plan_standard_z(in, ZVariant::means);
    else if (op == "standard_z_medians") r = plan_standard_z(in, ZVariant::medians);
    const bool ok = r.M == v["M"].get<std::int64_t>() &&
                    r.P == v["P"].get<std::vector<std::int64_t>>() &&
                    r.J == v["J"].get<std::int64_t>() &&
                    r.predicted_cost == v["cost"].get<std::int64_t>();
    matched += ok;
    if (!ok) detail += " mismatch:" + op;
  }
  return {matched == total && total > 0,
          std::to_string(matched) + "/" + std::to_string(total) + " golden cases" + detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"unbiasedness", unbiasedness},
      {"schedule_chi2", schedule_chi2},
      {"wastefree_z_guarantee", wastefree_z_guarantee},
      {"median_robustness", median_robustness},
      {"greedy_allocation", greedy_allocation},
      {"mixture_kernel_variance", mixture_kernel_variance},
      {"monte_carlo_rate", monte_carlo_rate},
      {"example1_tails", example1_tails},
      {"exactness", exactness},
      {"planner_golden", planner_golden},
  };
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !out.pass;
    std::printf("%s %s (%.1fs): %s\n", out.pass ? "PASS" : "FAIL", name.c_str(), secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
