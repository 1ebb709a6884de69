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

#ifndef MISSDP_AMPLIFY_STABILITY_H_
#define MISSDP_AMPLIFY_STABILITY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "missdp/tabular/dataset.h"

namespace missdp {

// Privacy cost of imputing before a DP mechanism. Imputing attribute A from
// the observed cells is (m_A + 1)-stable: a changed row can alter every
// imputed cell of A plus itself.
struct StabilityReport {
  std::vector<int> order;
  // Per attribute of `order`.
  std::vector<int64_t> missing_counts;
  std::vector<int64_t> stability;
  // Rows with a missing cell in some imputed attribute.
  int64_t incomplete_rows = 0;
  // Rows of the imputed output that a single changed input row can touch:
  // min(n, incomplete_rows + 1). The downstream epsilon is multiplied by it.
  int64_t multiplier = 1;
  // The general bound n.
  int64_t worst_case_bound = 0;
};

StabilityReport StabilityCost(const Dataset& d,
                              std::span<const int> imputation_order);

nlohmann::json StabilityReportToJson(const StabilityReport& r,
                                     const Schema& schema);

}  // namespace missdp

#endif  // MISSDP_AMPLIFY_STABILITY_H_
