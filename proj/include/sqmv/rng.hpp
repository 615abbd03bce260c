// Copyright 2026 The sqmv developers
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

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sqmv {

/**
 * Seedable, splittable random stream.
 *
 * Streams are identified by the seed they were constructed from, not by
 * engine state, so `child(i)` yields the same independent substream no
 * matter how much the parent has already been consumed. All protocol
 * sampling goes through this class; byte-reproducible experiments depend
 * on it.
 */
class RngStream {
 public:
  explicit RngStream(uint64_t seed);

  /// Independent substream derived from (seed, index). Deterministic.
  RngStream child(uint64_t index) const;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Single fair bit.
  int bit();

  bool bernoulli(double p);

  /// Standard normal deviate (Box-Muller; no libstdc++ dependence).
  double gaussian();

  /// Index sampled according to `weights` (need not be normalized).
  std::size_t sample_discrete(std::span<const double> weights);

  uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_gaussian_ = false;
  double spare_gaussian_ = 0.0;
};

}  // namespace sqmv
