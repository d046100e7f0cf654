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

// Serial reference loops. The parallel versions must match these bit for bit.

#include "smc/samplers.hpp"

namespace smc::detail {

void run_chain(const ChainBatch& b, std::size_t m) {
  const SequenceTarget target(*b.seq, b.t - 1);
  RandomStream rng(b.seed, b.t, m, StreamPurpose::kernel);
  const std::size_t d = static_cast<std::size_t>(b.seq->dim());
  const std::size_t P = static_cast<std::size_t>(b.chain_length);

  ChainState state = b.kernel->init(target, b.prev->particle(b.ancestors[m]));
  ChainState scratch;
  KernelStats stats;
  auto store = [&](std::size_t row) {
    std::copy(state.x.begin(), state.x.end(), b.next->positions.begin() + row * d);
  };
  if (b.keep_all) store(m * P);
  for (std::size_t p = 1; p < P; ++p) {
    ++stats.proposals;
    if (b.kernel->step(target, state, scratch, rng)) ++stats.accepts;
    if (b.keep_all) store(m * P + p);
  }
  if (!b.keep_all) store(m);
  b.stats[m] = stats;
}

void advance_chains_reference(const ChainBatch& b) {
  for (std::size_t m = 0; m < b.ancestors.size(); ++m) run_chain(b, m);
}

void sample_base_reference(const TemperedSequence& seq, std::uint64_t seed, ParticleCloud& cloud) {
  for (std::size_t n = 0; n < cloud.size(); ++n) {
    RandomStream rng(seed, 0, n, StreamPurpose::init);
    seq.sample_base(rng, cloud.particle(n));
  }
}

void log_weights_reference(const TemperedSequence& seq, int t, ParticleCloud& cloud) {
  for (std::size_t n = 0; n < cloud.size(); ++n) {
    cloud.log_weights[n] = seq.log_incremental_weight(t, cloud.particle(n));
  }
}

}  // namespace smc::detail
