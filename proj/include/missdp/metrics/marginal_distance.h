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

#ifndef MISSDP_METRICS_MARGINAL_DISTANCE_H_
#define MISSDP_METRICS_MARGINAL_DISTANCE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "missdp/tabular/dataset.h"

namespace missdp {

enum class DistanceKind {
  // max over cells of |p_real - p_synth|.
  kMaxCell,
  // Half the L1 distance. Offered for comparison only.
  kTotalVariation,
};

absl::StatusOr<DistanceKind> ParseDistanceKind(const std::string& name);
std::string DistanceKindName(DistanceKind kind);

struct KwayOptions {
  DistanceKind kind = DistanceKind::kMaxCell;
  // For k >= 3, at most this many seeded attribute subsets are scored.
  int sample_limit = 200;
  uint64_t seed = 0;
};

// Distance between the normalized marginals over `attrs`, each counted on
// its own rows complete on `attrs`. An empty marginal on either side gives 1.
absl::StatusOr<double> MarginalDistance(const Dataset& real,
                                        const Dataset& synth,
                                        std::span<const int> attrs,
                                        DistanceKind kind = DistanceKind::kMaxCell);

// Attribute subsets scored for k: all of them for k <= 2 (or when there are
// at most sample_limit), otherwise sample_limit seeded draws.
std::vector<std::vector<int>> KwaySubsets(int cols, int k,
                                          const KwayOptions& options = {});

// Average MarginalDistance over KwaySubsets.
absl::StatusOr<double> KwayDistance(const Dataset& real, const Dataset& synth,
                                    int k, const KwayOptions& options = {});

}  // namespace missdp

#endif  // MISSDP_METRICS_MARGINAL_DISTANCE_H_
