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

#include "missdp/amplify/sampling.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace missdp {

absl::StatusOr<AmplifyMode> ParseAmplifyMode(const std::string& name) {
  if (name == "linear") return AmplifyMode::kLinear;
  if (name == "exact") return AmplifyMode::kExact;
  return absl::InvalidArgumentError(absl::StrCat("unknown mode \"", name, "\""));
}

std::string AmplifyModeName(AmplifyMode mode) {
  return mode == AmplifyMode::kLinear ? "linear" : "exact";
}

double AmplifiedEpsilon(double p, double epsilon, AmplifyMode mode) {
  if (p == 0.0) return 0.0;
  if (mode == AmplifyMode::kLinear || p == 1.0) return p * epsilon;
  return std::log1p(p * std::expm1(epsilon));
}

absl::StatusOr<PrivacyParams> SamplingAmplify(double p, double epsilon,
                                              double delta, AmplifyMode mode) {
  if (!(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sampling probability must lie in [0, 1], got ", p));
  }
  if (!(epsilon >= 0.0) || !(delta >= 0.0)) {
    return absl::InvalidArgumentError("epsilon and delta must be non-negative");
  }
  return PrivacyParams{AmplifiedEpsilon(p, epsilon, mode), p * delta};
}

double McarFactor(std::span<const double> phi, std::span<const int> attrs) {
  double p = 1.0;
  for (int a : attrs) p *= 1.0 - phi[a];
  return p;
}

double McarFactor(const PhiEstimate& phi, std::span<const int> attrs) {
  return McarFactor(std::span<const double>(phi.phi), attrs);
}

}  // namespace missdp
