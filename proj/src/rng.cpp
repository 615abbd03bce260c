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

#include "sqmv/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace sqmv {

namespace {

// splitmix64 finalizer; used both to decorrelate raw seeds and to mix
// (seed, child index) pairs into fresh seeds.
uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

RngStream RngStream::child(uint64_t index) const {
  return RngStream(mix64(seed_ ^ mix64(index + 1)));
}

double RngStream::uniform() {
  // 53-bit mantissa; mt19937_64 output is fully specified by the standard,
  // so this sequence is platform-independent.
  return std::ldexp(static_cast<double>(engine_() >> 11), -53);
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

int RngStream::bit() { return static_cast<int>(engine_() >> 63); }

bool RngStream::bernoulli(double p) { return uniform() < p; }

double RngStream::gaussian() {
  if (have_spare_gaussian_) {
    have_spare_gaussian_ = false;
    return spare_gaussian_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = radius * std::sin(angle);
  have_spare_gaussian_ = true;
  return radius * std::cos(angle);
}

std::size_t RngStream::sample_discrete(std::span<const double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("sample_discrete: empty weight list");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) {
      throw std::invalid_argument(fmt::format("sample_discrete: negative weight {}", w));
    }
    total += w;
  }
  if (total <= 0.0) {
    throw std::invalid_argument("sample_discrete: weights sum to zero");
  }
  const double target = uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) {
      return i;
    }
  }
  return weights.size() - 1;
}

}  // namespace sqmv
