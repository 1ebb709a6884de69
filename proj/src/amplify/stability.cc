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

#include "missdp/amplify/stability.h"

#include <algorithm>

#include "missdp/tabular/marginal.h"

namespace missdp {

StabilityReport StabilityCost(const Dataset& d,
                              std::span<const int> imputation_order) {
  StabilityReport r;
  r.order.assign(imputation_order.begin(), imputation_order.end());
  for (int a : r.order) {
    r.missing_counts.push_back(d.MissingCount(a));
    r.stability.push_back(d.MissingCount(a) + 1);
  }
  const std::vector<uint8_t> flags = IncompleteRowFlags(d, r.order);
  r.incomplete_rows = std::count(flags.begin(), flags.end(), uint8_t{1});
  r.worst_case_bound = d.rows();
  r.multiplier = r.incomplete_rows == 0
                     ? 1
                     : std::min<int64_t>(std::max<int64_t>(d.rows(), 1),
                                         r.incomplete_rows + 1);
  return r;
}

nlohmann::json StabilityReportToJson(const StabilityReport& r,
                                     const Schema& schema) {
  nlohmann::json attrs = nlohmann::json::array();
  for (size_t i = 0; i < r.order.size(); ++i) {
    attrs.push_back({{"attribute", schema.attribute(r.order[i]).name()},
                     {"missing", r.missing_counts[i]},
                     {"stability", r.stability[i]}});
  }
  return {{"attributes", attrs},
          {"incomplete_rows", r.incomplete_rows},
          {"multiplier", r.multiplier},
          {"worst_case_bound", r.worst_case_bound}};
}

}  // namespace missdp
