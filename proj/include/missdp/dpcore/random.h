// Copyright 2026 The missdp Authors.
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

// Seeded randomness used throughout the library. All samplers draw from an
// explicit generator so runs are reproducible for a fixed seed; the
// transformations are written out here rather than delegated to
// <random> distributions, whose algorithms are implementation-defined.

#ifndef MISSDP_DPCORE_RANDOM_H_
#define MISSDP_DPCORE_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace missdp {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent sub-seeds.
uint64_t MixSeed(uint64_t seed, uint64_t stream);

inline Rng MakeRng(uint64_t seed, uint64_t stream = 0) {
  return Rng(MixSeed(seed, stream));
}

// Uniform in [0, 1) with 53 random bits.
double UniformUnit(Rng& rng);

// Uniform integer in [0, n). n must be positive.
uint64_t UniformIndex(Rng& rng, uint64_t n);

double SampleLaplace(Rng& rng, double scale);
double SampleStandardNormal(Rng& rng);

// Index drawn with probability proportional to weights[i]. Weights must be
// non-negative; an all-zero vector falls back to a uniform draw.
size_t SampleDiscrete(Rng& rng, std::span<const double> weights);

// First `count` entries of a uniformly random permutation of [0, n).
std::vector<int64_t> SampleWithoutReplacement(Rng& rng, int64_t n, int64_t count);

}  // namespace missdp

#endif  // MISSDP_DPCORE_RANDOM_H_
