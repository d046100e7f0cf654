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


#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "doctest.h"
#include "smc/error.hpp"
#include "smc/estimators.hpp"
#include "smc/oracle.hpp"
#include "smc/samplers.hpp"

using namespace smc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GaussianOracle oracle2d(Schedule s) {
  Eigen::Vector2d mu(0.3, -0.2);
  return GaussianOracle(Gaussian::isotropic(2), Gaussian(mu, 0.5 * Eigen::MatrixXd::Identity(2, 2)),
                        std::move(s));
}

RunConfig config(std::shared_ptr<const TemperedSequence> seq, Algorithm alg, int M, int P,
                 std::uint64_t seed) {
  RunConfig c;
  c.sequence = std::move(seq);
  c.kernel = constant_kernel(KernelSpec::rwm(default_rwm_scale(2)));
  c.M = M;
  c.P = {P};
  c.seed = seed;
  c.algorithm = alg;
  return c;
}

// Delegates to a path but rewrites log G_t.
class EditedWeights final : public TemperedSequence {
 public:
  using Edit = std::function<double(int t, double log_g)>;
  EditedWeights(std::shared_ptr<const GeometricPath> inner, Edit edit)
      : inner_(std::move(inner)), edit_(std::move(edit)) {}
  int horizon() const override { return inner_->horizon(); }
  int dim() const override { return inner_->dim(); }
  double log_base(Point x) const override { return inner_->log_base(x); }
  void sample_base(RandomStream& rng, MutablePoint out) const override {
    inner_->sample_base(rng, out);
  }
  double log_density(int t, Point x) const override { return inner_->log_density(t, x); }

 protected:
  double raw_log_incremental_weight(int t, Point x) const override {
    return edit_(t, inner_->log_incremental_weight(t, x));
  }

 private:
  std::shared_ptr<const GeometricPath> inner_;
  Edit edit_;
};

}  // namespace

TEST_CASE("algorithm names") {
  for (auto a : {Algorithm::standard, Algorithm::wastefree, Algorithm::greedy}) {
    CHECK(algorithm_from_string(to_string(a)) == a);
  }
  CHECK(algorithm_from_string("waste-free") == Algorithm::wastefree);
  CHECK_THROWS_AS(algorithm_from_string("smc"), ConfigError);
}

TEST_CASE("multinomial resampling") {
  RandomStream rng(1, 0, 0, StreamPurpose::test);
  const std::vector<double> one_hot{0.0, 1.0, 0.0};
  for (auto a : resample_multinomial(one_hot, 50, rng)) CHECK(a == 1);
  const std::vector<double> w{0.1, 0.2, 0.7};
  std::map<std::size_t, int> counts;
  const int n = 100000;
  for (auto a : resample_multinomial(w, n, rng)) ++counts[a];
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(counts[i] / static_cast<double>(n) == doctest::Approx(w[i]).epsilon(0.03));
  }
  CHECK_THROWS_AS(resample_multinomial(std::vector<double>{0.0, 0.0}, 2, rng),
                  DegenerateWeightsError);
  CHECK_THROWS_AS(resample_multinomial(std::vector<double>{-0.5, 1.5}, 2, rng), ConfigError);
  CHECK_THROWS_AS(resample_multinomial(std::vector<double>{0.3, 0.3}, 2, rng), ConfigError);
}

TEST_CASE("run configuration validation") {
  const auto o = oracle2d(equidistant_schedule(3));
  RunConfig c = config(o.path(), Algorithm::wastefree, 10, 5, 0);
  CHECK_NOTHROW(c.validate());
  c.P = {5, 5};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.algorithm = Algorithm::greedy;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.P = {5, 5, 5, 10};
  CHECK_NOTHROW(c.validate());
  CHECK(c.chain_length(3) == 10);
  c.M = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("pool sizes and bookkeeping") {
  const auto o = oracle2d(equidistant_schedule(3));
  const RunRecord wf = run_smc(config(o.path(), Algorithm::wastefree, 7, 5, 1));
  REQUIRE(wf.ok());
  CHECK(wf.iterations.size() == 4);
  CHECK(wf.final_cloud.size() == 35);
  CHECK(wf.markov_steps == 3u * 7u * 4u);
  CHECK(wf.lambdas() == o.schedule().lambdas());
  double sum = 0.0;
  for (const auto& it : wf.iterations) sum += it.log_ratio;
  CHECK(sum == wf.log_z);
  const RunRecord st = run_smc(config(o.path(), Algorithm::standard, 7, 5, 1));
  CHECK(st.final_cloud.size() == 7);
  CHECK(st.iterations.front().pool_size == 7);
  CHECK(st.markov_steps == 3u * 7u * 4u);
}

TEST_CASE("serial and OpenMP execution agree bit for bit") {
  const auto o = oracle2d(equidistant_schedule(4));
  for (auto alg : {Algorithm::standard, Algorithm::wastefree}) {
    RunConfig c = config(o.path(), alg, 13, 6, 42);
    const auto ref = fingerprint(run_smc(c));
    c.execution = Execution::parallel;
    for (int threads : {1, 2, 4, 7}) {
      c.threads = threads;
      CHECK(fingerprint(run_smc(c)) == ref);
    }
  }
}

TEST_CASE("greedy with constant chain length is waste-free") {
  const auto o = oracle2d(equidistant_schedule(4));
  RunConfig c = config(o.path(), Algorithm::wastefree, 9, 6, 3);
  const RunRecord wf = run_smc(c);
  c.algorithm = Algorithm::greedy;
  const RunRecord g1 = run_smc(c);
  c.P = std::vector<int>(5, 6);
  const RunRecord g2 = run_smc(c);
  for (const RunRecord* g : {&g1, &g2}) {
    CHECK(g->log_z == wf.log_z);
    CHECK(g->final_cloud.positions == wf.final_cloud.positions);
    CHECK(g->final_cloud.log_weights == wf.final_cloud.log_weights);
  }
}

TEST_CASE("greedy allocates a longer final chain") {
  const auto o = oracle2d(equidistant_schedule(3));
  RunConfig c = config(o.path(), Algorithm::greedy, 4, 5, 3);
  c.P = {5, 5, 5, 20};
  const RunRecord r = run_smc(c);
  CHECK(r.final_cloud.size() == 80);
  CHECK(r.iterations[2].pool_size == 20);
  CHECK(r.markov_steps == 4u * (4 + 4 + 19));
}

TEST_CASE("single particle gives the importance path weight") {
  const auto o = oracle2d(equidistant_schedule(2));
  const RunRecord r = run_smc(config(o.path(), Algorithm::standard, 1, 4, 9));
  REQUIRE(r.ok());
  // With N = 1 each factor is G_t at that particle, so the product is the path weight.
  for (const auto& it : r.iterations) CHECK(it.pool_size == 1);
  CHECK(r.log_z == doctest::Approx(r.iterations[0].log_ratio + r.iterations[1].log_ratio +
                                   r.iterations[2].log_ratio));
  CHECK(r.final_cloud.log_weights[0] == r.iterations[2].log_ratio);
}

TEST_CASE("trivial sequence: log Z_T equals log Z_0") {
  auto base = std::make_shared<const Gaussian>(Gaussian::isotropic(2));
  auto pot = std::make_shared<const Potential>(gaussian_potential(Gaussian::isotropic(2, 0.5)));
  auto seq = std::make_shared<const ConstantSequence>(base, pot, 5);
  for (auto alg : {Algorithm::standard, Algorithm::wastefree}) {
    const RunRecord r = run_smc(config(seq, alg, 20, 5, 4));
    REQUIRE(r.ok());
    CHECK(std::abs(r.log_z - r.iterations.front().log_ratio) <= 1e-12);
  }
}

TEST_CASE("scaling the weights of one iteration scales Z-hat only") {
  const auto o = oracle2d(equidistant_schedule(4));
  const double log_k = 2.0;
  auto scaled = std::make_shared<const EditedWeights>(
      o.path(), [log_k](int t, double lg) { return t == 2 ? lg + log_k : lg; });
  for (auto alg : {Algorithm::standard, Algorithm::wastefree}) {
    const RunRecord a = run_smc(config(o.path(), alg, 30, 5, 8));
    const RunRecord b = run_smc(config(scaled, alg, 30, 5, 8));
    CHECK(b.log_z - a.log_z == doctest::Approx(log_k).epsilon(1e-12));
    CHECK(b.final_cloud.positions == a.final_cloud.positions);
  }
}

TEST_CASE("all-zero weights abort the run") {
  const auto o = oracle2d(equidistant_schedule(4));
  auto dead = std::make_shared<const EditedWeights>(
      o.path(), [](int t, double lg) { return t == 2 ? -kInf : lg; });
  const RunRecord r = run_smc(config(dead, Algorithm::wastefree, 10, 5, 1));
  CHECK_FALSE(r.ok());
  REQUIRE(r.aborted_at.has_value());
  CHECK(*r.aborted_at == 2);
  CHECK(r.iterations.size() == 3);
  CHECK_THROWS_AS(z_product_of_means(r), DegenerateWeightsError);
  // Partly zero weights are fine.
  auto half = std::make_shared<const EditedWeights>(o.path(), [](int t, double lg) {
    return t == 2 && lg < -0.5 ? -kInf : lg;
  });
  CHECK(run_smc(config(half, Algorithm::wastefree, 50, 5, 1)).ok());
}

TEST_CASE("adaptive runs reach the target with the requested rESS") {
  const auto o = oracle2d(Schedule({1.0}));
  AdaptiveRunConfig c;
  c.path = o.path();
  c.kernel = constant_kernel(KernelSpec::rwm(default_rwm_scale(2)));
  c.M = 50;
  c.P = 10;
  c.seed = 5;
  c.schedule.target_ress = 0.5;
  for (auto alg : {Algorithm::standard, Algorithm::wastefree}) {
    c.algorithm = alg;
    const RunRecord r = run_adaptive_smc(c);
    REQUIRE(r.ok());
    const auto l = r.lambdas();
    CHECK(l.back() == 1.0);
    for (std::size_t t = 0; t + 1 < r.iterations.size(); ++t) {
      CHECK(r.iterations[t].ress == doctest::Approx(0.5).epsilon(1e-6));
      CHECK_FALSE(r.iterations[t].schedule_fallback);
    }
    CHECK(r.iterations.back().ress >= 0.5);
  }
  c.algorithm = Algorithm::greedy;
  CHECK_THROWS_AS(run_adaptive_smc(c), ConfigError);
}

TEST_CASE("normalizing constant is unbiased on a small oracle") {
  const auto o = oracle2d(equidistant_schedule(3));
  const double truth = o.log_z(o.horizon());
  double sum = 0.0, sum_sq = 0.0;
  const int n = 200;
  for (int s = 0; s < n; ++s) {
    const double z = std::exp(run_smc(config(o.path(), Algorithm::wastefree, 20, 10, s)).log_z - truth);
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  CHECK(std::abs(mean - 1.0) < 4.0 * se);
}
