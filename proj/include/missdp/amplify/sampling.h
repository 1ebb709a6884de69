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

#ifndef MISSDP_AMPLIFY_SAMPLING_H_
#define MISSDP_AMPLIFY_SAMPLING_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "missdp/missing/inject.h"

namespace missdp {

enum class AmplifyMode {
  // eps' = p * eps.
  kLinear,
  // eps' = ln(1 + p (e^eps - 1)).
  kExact,
};

absl::StatusOr<AmplifyMode> ParseAmplifyMode(const std::string& name);
std::string AmplifyModeName(AmplifyMode mode);

struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;
};

// A mechanism run on a subsample that keeps each row with probability p.
// delta' = p * delta in both modes.
absl::StatusOr<PrivacyParams> SamplingAmplify(double p, double epsilon,
                                              double delta, AmplifyMode mode);

// Amplified epsilon alone; p must already be in [0, 1].
double AmplifiedEpsilon(double p, double epsilon, AmplifyMode mode);

// Probability that a row is complete on `attrs` under independent MCAR:
// the product of (1 - phi_j). The empty set gives 1.
double McarFactor(std::span<const double> phi, std::span<const int> attrs);
double McarFactor(const PhiEstimate& phi, std::span<const int> attrs);

}  // namespace missdp

#endif  // MISSDP_AMPLIFY_SAMPLING_H_
