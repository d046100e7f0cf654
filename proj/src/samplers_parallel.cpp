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

#include <omp.h>

#include <exception>
#include <vector>

#include "smc/samplers.hpp"

namespace smc::detail {

namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

// Exceptions cannot leave an OpenMP region. Each index records its own, and
// the lowest failing index is rethrown so the error does not depend on timing.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void advance_chains_parallel(const ChainBatch& b, int threads) {
  parallel_for(b.ancestors.size(), threads, [&b](std::size_t m) { run_chain(b, m); });
}

void sample_base_parallel(const TemperedSequence& seq, std::uint64_t seed, ParticleCloud& cloud,
                          int threads) {
  parallel_for(cloud.size(), threads, [&](std::size_t n) {
    RandomStream rng(seed, 0, n, StreamPurpose::init);
    seq.sample_base(rng, cloud.particle(n));
  });
}

void log_weights_parallel(const TemperedSequence& seq, int t, ParticleCloud& cloud, int threads) {
  parallel_for(cloud.size(), threads, [&](std::size_t n) {
    cloud.log_weights[n] = seq.log_incremental_weight(t, cloud.particle(n));
  });
}

}  // namespace smc::detail
