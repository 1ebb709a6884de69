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

#ifndef MISSDP_MISSING_INJECT_H_
#define MISSDP_MISSING_INJECT_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "missdp/tabular/dataset.h"

namespace missdp {

// Column j loses exactly round(phi[j] * n) cells, uniformly within the column.
struct McarSpec {
  std::vector<double> phi;
};

// Exactly round(rate * n * k) cells, uniformly over the whole table.
struct McarGlobalSpec {
  double rate = 0.0;
};

// A random ceil(feature_fraction * k) subset of attributes stays complete and
// drives a logistic model that masks the remaining attributes.
struct MarSpec {
  double rate = 0.0;
  double feature_fraction = 0.5;
};

// As MarSpec, but the feature attributes are then masked by an independent
// MCAR draw at `rate`, so the model depends on values that may be missing.
struct MnarSpec {
  double rate = 0.0;
  double feature_fraction = 0.5;
};

struct MissingSpec {
  std::variant<McarSpec, McarGlobalSpec, MarSpec, MnarSpec> mechanism;
  uint64_t seed = 0;
};

// "mcar", "mcar_global", "mar" or "mnar".
std::string MechanismName(const MissingSpec& spec);

// Checks probability ranges and, when `cols` is given, arity.
absl::Status ValidateSpec(const MissingSpec& spec, int cols = -1);

// {"mechanism": "mar", "rate": 0.2, "feature_fraction": 0.5, "seed": 1}
// {"mechanism": "mcar", "phi": [0.1, 0.0], "seed": 1}
absl::StatusOr<MissingSpec> MissingSpecFromJson(const nlohmann::json& j);
nlohmann::json MissingSpecToJson(const MissingSpec& spec);

// Attributes used as logistic features for a MAR/MNAR draw with this seed.
std::vector<int> FeatureAttributes(int cols, double feature_fraction,
                                   uint64_t seed);

// Masks cells of a complete dataset. Only the mask changes.
absl::StatusOr<Dataset> Inject(const Dataset& d, const MissingSpec& spec);

struct PhiEstimate {
  std::vector<double> phi;
  int64_t n = 0;
};

// Per-column empirical missing fraction.
absl::StatusOr<PhiEstimate> EstimatePhi(const Dataset& d);

struct SameRowsResult {
  Dataset data;
  double rate = 0.0;
  int64_t complete_rows = 0;
};

// Raises the rate of a MAR or MNAR spec in `step` increments until the
// injected dataset has at most `target_complete_rows` complete rows.
absl::StatusOr<SameRowsResult> InjectWithSameRows(const Dataset& d,
                                                  const MissingSpec& spec,
                                                  int64_t target_complete_rows,
                                                  double step = 0.005);

}  // namespace missdp

#endif  // MISSDP_MISSING_INJECT_H_
