// Copyright 2026 The throttlesim Authors.
//
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

#ifndef THROTTLESIM_RNG_H_
#define THROTTLESIM_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace throttlesim {

// Mixes a base seed with any number of integer coordinates (horizon,
// strategy index, replication, ...) into a well-spread 64-bit seed.
// Stable across platforms and releases: report reproducibility depends on it.
uint64_t DeriveSeed(uint64_t base, std::initializer_list<uint64_t> parts);

// Thin wrapper over std::mt19937_64. The engine's output sequence is fixed
// by the standard, and the conversions below avoid the
// implementation-defined std distributions, so streams replay bit-identically
// on every conforming toolchain.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return Uniform01() < p; }

  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  uint64_t UniformInt(uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// Independent per-episode substreams. Values and prices use their own
// streams so the input realization does not depend on the strategy.
struct EpisodeStreams {
  explicit EpisodeStreams(uint64_t seed)
      : values(DeriveSeed(seed, {1})),
        prices(DeriveSeed(seed, {2})),
        strategy(DeriveSeed(seed, {3})) {}

  Rng values;
  Rng prices;
  Rng strategy;
};

}  // namespace throttlesim

#endif  // THROTTLESIM_RNG_H_
