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

#ifndef MISSDP_AMPLIFY_PARTITION_SEARCH_H_
#define MISSDP_AMPLIFY_PARTITION_SEARCH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "missdp/amplify/sampling.h"

namespace missdp {

// A marginal over `attrs` released at (epsilon, delta) from the complete rows
// of those attributes.
struct MarginalQuery {
  std::vector<int> attrs;
  double epsilon = 0.0;
  double delta = 0.0;
};

enum class SearchKind {
  kExact,
  // Local search; never claimed optimal.
  kGreedy,
  // Each marginal, by decreasing saving, takes its whole attribute set when
  // that is disjoint from earlier picks; the others stay unamplified.
  kNaive,
};

absl::StatusOr<SearchKind> ParseSearchKind(const std::string& name);
std::string SearchKindName(SearchKind kind);

struct AmplificationPlan {
  // Disjoint attribute blocks, each sorted.
  std::vector<std::vector<int>> blocks;
  // Per block, the product of (1 - phi) over its attributes.
  std::vector<double> factors;
  // Per query, the index of its block, or -1 when it stays unamplified (only
  // the naive baseline does this).
  std::vector<int> assignment;
  AmplifyMode mode = AmplifyMode::kLinear;
  SearchKind search = SearchKind::kExact;
  // Cost in `mode`, and in both modes.
  double amplified_epsilon = 0.0;
  double linear_epsilon = 0.0;
  double exact_epsilon = 0.0;
  double amplified_delta = 0.0;
  double total_epsilon = 0.0;
  int64_t partitions_visited = 0;
};

struct PartitionOptions {
  // Largest number of distinct query attributes the exact search accepts.
  int exact_cap = 12;
  // Abandon a partition once its running cost exceeds the incumbent.
  bool cost_pruning = true;
};

absl::Status ValidateQueries(std::span<const MarginalQuery> queries,
                             std::span<const double> phi);

// Minimum amplified cost over valid partitions (every marginal contains a
// block; each takes its smallest-factor contained block).
absl::StatusOr<AmplificationPlan> OptimalPartition(
    std::span<const MarginalQuery> queries, std::span<const double> phi,
    SearchKind search, AmplifyMode mode, const PartitionOptions& options = {});

// Cost of a fixed partition, assigning each query its smallest-factor
// contained block. NotFound when some query contains no block.
absl::StatusOr<AmplificationPlan> EvaluatePartition(
    std::span<const MarginalQuery> queries, std::span<const double> phi,
    std::vector<std::vector<int>> blocks, AmplifyMode mode);

// Blocks disjoint, assigned blocks contained in their marginal and every
// marginal assigned. The naive baseline fails the last check when it leaves
// a marginal unamplified.
absl::Status ValidatePlan(const AmplificationPlan& plan,
                          std::span<const MarginalQuery> queries);

// Amplifies the single model whose attribute has the smallest (1 - phi_i),
// first index on ties; the other per-attribute budgets are summed as is.
absl::StatusOr<double> ColumnwiseAmplify(std::span<const double> phi,
                                         std::span<const double> epsilons,
                                         AmplifyMode mode = AmplifyMode::kLinear);

nlohmann::json PlanToJson(const AmplificationPlan& plan);

}  // namespace missdp

#endif  // MISSDP_AMPLIFY_PARTITION_SEARCH_H_
