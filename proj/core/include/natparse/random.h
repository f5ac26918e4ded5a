// Copyright 2026 The natparse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NATPARSE_RANDOM_H_
#define NATPARSE_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace natparse {

// Seeded generator with platform-independent sampling routines. The
// standard distributions are not used because their output differs between
// standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }
  // Uniform in [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);
  // Uniform in [0, 1) with 53 bits of precision.
  double UniformReal();
  bool Bernoulli(double p) { return UniformReal() < p; }
  // Knuth's multiplication method; fine for the small means used here.
  int Poisson(double lambda);
  // Index drawn proportionally to non-negative weights (not all zero).
  size_t Discrete(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer applied to (base, index); used to derive per-item
// seeds so batch items are independent of evaluation order.
uint64_t MixSeed(uint64_t base, uint64_t index);

}  // namespace natparse

#endif  // NATPARSE_RANDOM_H_
