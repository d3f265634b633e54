// Copyright 2026 The avkit Authors.
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

#ifndef AVKIT_RANDOM_H_
#define AVKIT_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace avkit {

// Seeded generator whose output is identical on every platform. The
// standard distributions are implementation-defined, so bounded integers,
// uniform reals, normals and shuffles are derived here from the raw
// mt19937_64 stream, which the standard does pin down.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  uint64_t Below(uint64_t bound);

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform();

  // Standard normal via Box-Muller (no cached second value).
  double Normal();

  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finaliser.
uint64_t MixSeed(uint64_t x);

// Derives an independent stream seed from a base seed and a label, e.g. an
// author id. Stable across runs and platforms.
uint64_t DeriveSeed(uint64_t seed, std::string_view label);

}  // namespace avkit

#endif  // AVKIT_RANDOM_H_
