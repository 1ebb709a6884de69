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

#ifndef MISSDP_DPCORE_MECHANISMS_H_
#define MISSDP_DPCORE_MECHANISMS_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "missdp/dpcore/random.h"

namespace missdp {

// An infinite budget is a first-class value meaning "run without noise".
inline constexpr double kInfiniteEpsilon = std::numeric_limits<double>::infinity();

inline bool IsInfinite(double epsilon) { return epsilon == kInfiniteEpsilon; }

// Laplace scale sensitivity / epsilon; 0 when epsilon is infinite.
absl::StatusOr<double> LaplaceScale(double sensitivity, double epsilon);

// Adds i.i.d. Laplace(0, scale) noise in place. A zero scale is the
// noise-free identity and is only meaningful for an infinite budget.
absl::Status AddLaplaceNoise(std::span<double> values, double scale, Rng& rng);

// Laplace mechanism at (sensitivity, epsilon) over a copy of `values`.
absl::StatusOr<std::vector<double>> LaplaceMechanism(
    std::span<const double> values, double sensitivity, double epsilon,
    Rng& rng);

// Classic Gaussian calibration sensitivity * sqrt(2 ln(1.25/delta)) / epsilon,
// valid only for epsilon in (0, 1).
absl::StatusOr<double> GaussianSigma(double epsilon, double delta,
                                     double sensitivity);

// Smallest sigma (to relative accuracy 1e-6) for which the Gaussian
// mechanism is (epsilon, delta)-DP by the exact privacy-profile condition
//   Phi(s/(2 sigma) - eps sigma/s) - e^eps Phi(-s/(2 sigma) - eps sigma/s)
//   <= delta.
// Valid for every epsilon > 0.
absl::StatusOr<double> AnalyticGaussianSigma(double epsilon, double delta,
                                             double sensitivity);

absl::Status AddGaussianNoise(std::span<double> values, double sigma, Rng& rng);

// Selects index i with probability proportional to
// exp(epsilon * score_i / (2 * sensitivity)). With an infinite budget the
// first maximal score wins deterministically.
absl::StatusOr<size_t> ExponentialMechanism(std::span<const double> scores,
                                            double sensitivity, double epsilon,
                                            Rng& rng);

// Selection probabilities the exponential mechanism uses (softmax of
// epsilon * score / (2 * sensitivity), max-shifted).
std::vector<double> ExponentialMechanismProbabilities(
    std::span<const double> scores, double sensitivity, double epsilon);

// 10^-(ceil(log10 n) + 1): one order of magnitude below 1/n, rounded to a
// power of ten.
double DefaultDelta(int64_t n);

}  // namespace missdp

#endif  // MISSDP_DPCORE_MECHANISMS_H_
