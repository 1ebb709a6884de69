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

#include "missdp/amplify/guard.h"

namespace missdp {

GuardResult GroundTruthGuard(const std::string& mechanism) {
  if (mechanism == "mcar" || mechanism == "mcar_global") {
    return {GuardDecision::kPermitted,
            "independent missingness: amplification permitted"};
  }
  if (mechanism == "mar" || mechanism == "mnar") {
    return {GuardDecision::kNoAmplification,
            "missingness depends on the data: ε̄ = ε, no amplification"};
  }
  return {GuardDecision::kRefused,
          "unknown missing mechanism: no ground-truth privacy claim"};
}

std::string GuardDecisionName(GuardDecision d) {
  switch (d) {
    case GuardDecision::kPermitted:
      return "permitted";
    case GuardDecision::kNoAmplification:
      return "no_amplification";
    case GuardDecision::kRefused:
      return "refused";
  }
  return "refused";
}

}  // namespace missdp
