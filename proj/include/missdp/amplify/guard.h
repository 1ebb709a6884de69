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

#ifndef MISSDP_AMPLIFY_GUARD_H_
#define MISSDP_AMPLIFY_GUARD_H_

#include <string>

namespace missdp {

enum class GuardDecision {
  kPermitted,
  // Report the unamplified budget as the ground-truth cost.
  kNoAmplification,
  kRefused,
};

struct GuardResult {
  GuardDecision decision = GuardDecision::kRefused;
  std::string message;
};

// Whether ground-truth amplification may be claimed for data missing under
// the named mechanism ("mcar", "mcar_global", "mar", "mnar").
GuardResult GroundTruthGuard(const std::string& mechanism);

std::string GuardDecisionName(GuardDecision d);

}  // namespace missdp

#endif  // MISSDP_AMPLIFY_GUARD_H_
