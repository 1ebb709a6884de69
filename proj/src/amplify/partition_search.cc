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

#include "missdp/amplify/partition_search.h"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace missdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double QueryCost(double p, const MarginalQuery& q, AmplifyMode mode) {
  return AmplifiedEpsilon(p, q.epsilon, mode);
}

// Fills factors, costs and delta for fixed blocks and assignment.
AmplificationPlan BuildPlan(std::span<const MarginalQuery> queries,
                            std::span<const double> phi,
                            std::vector<std::vector<int>> blocks,
                            std::vector<int> assignment, AmplifyMode mode,
                            SearchKind search) {
  AmplificationPlan plan;
  plan.blocks = std::move(blocks);
  plan.assignment = std::move(assignment);
  plan.mode = mode;
  plan.search = search;
  for (const auto& b : plan.blocks) plan.factors.push_back(McarFactor(phi, b));
  for (size_t i = 0; i < queries.size(); ++i) {
    const int b = plan.assignment[i];
    const double p = b < 0 ? 1.0 : plan.factors[b];
    plan.linear_epsilon += QueryCost(p, queries[i], AmplifyMode::kLinear);
    plan.exact_epsilon += QueryCost(p, queries[i], AmplifyMode::kExact);
    plan.amplified_delta += p * queries[i].delta;
    plan.total_epsilon += queries[i].epsilon;
  }
  plan.amplified_epsilon =
      mode == AmplifyMode::kLinear ? plan.linear_epsilon : plan.exact_epsilon;
  return plan;
}

// Attributes referenced by the queries, as bit positions.
struct Universe {
  std::vector<int> attrs;
  std::vector<uint64_t> query_masks;
  std::vector<double> factors;  // per bit, 1 - phi
};

Universe MakeUniverse(std::span<const MarginalQuery> queries,
                      std::span<const double> phi) {
  Universe u;
  for (const auto& q : queries) u.attrs.insert(u.attrs.end(), q.attrs.begin(), q.attrs.end());
  std::sort(u.attrs.begin(), u.attrs.end());
  u.attrs.erase(std::unique(u.attrs.begin(), u.attrs.end()), u.attrs.end());
  for (int a : u.attrs) u.factors.push_back(1.0 - phi[a]);
  for (const auto& q : queries) {
    uint64_t mask = 0;
    for (int a : q.attrs) {
      mask |= uint64_t{1} << (std::lower_bound(u.attrs.begin(), u.attrs.end(), a) -
                              u.attrs.begin());
    }
    u.query_masks.push_back(mask);
  }
  return u;
}

std::vector<int> MaskToAttrs(const Universe& u, uint64_t mask) {
  std::vector<int> out;
  for (size_t b = 0; b < u.attrs.size(); ++b) {
    if (mask >> b & 1) out.push_back(u.attrs[b]);
  }
  return out;
}

absl::StatusOr<AmplificationPlan> ExactSearch(std::span<const MarginalQuery> queries,
                                              std::span<const double> phi,
                                              AmplifyMode mode,
                                              const PartitionOptions& options) {
  const Universe u = MakeUniverse(queries, phi);
  const int m = static_cast<int>(u.attrs.size());
  if (m > options.exact_cap || m > 62) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "exact partition search over ", m, " attributes exceeds the cap of ",
        options.exact_cap, "; use the greedy search"));
  }
  // Restricted growth string: a[i] <= max(a[0..i-1]) + 1.
  std::vector<int> a(m, 0), prefix_max(m, 0);
  std::vector<uint64_t> block_mask(m);
  std::vector<double> block_factor(m);
  std::vector<uint64_t> best_blocks;
  std::vector<int> best_assign(queries.size()), assign(queries.size());
  double best = kInf;
  int64_t visited = 0;
  while (true) {
    ++visited;
    const int blocks = prefix_max[m - 1] + 1;
    std::fill_n(block_mask.begin(), blocks, 0);
    std::fill_n(block_factor.begin(), blocks, 1.0);
    for (int i = 0; i < m; ++i) {
      block_mask[a[i]] |= uint64_t{1} << i;
      block_factor[a[i]] *= u.factors[i];
    }
    double cost = 0.0;
    bool keep = true;
    for (size_t q = 0; q < queries.size() && keep; ++q) {
      int chosen = -1;
      for (int b = 0; b < blocks; ++b) {
        if ((block_mask[b] & ~u.query_masks[q]) == 0 &&
            (chosen < 0 || block_factor[b] < block_factor[chosen])) {
          chosen = b;
        }
      }
      if (chosen < 0) {
        keep = false;  // a marginal without an amplification block
        break;
      }
      assign[q] = chosen;
      cost += QueryCost(block_factor[chosen], queries[q], mode);
      if (options.cost_pruning && cost > best) keep = false;
    }
    if (keep && cost < best) {
      best = cost;
      best_blocks.assign(block_mask.begin(), block_mask.begin() + blocks);
      best_assign = assign;
    }
    int i = m - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i <= 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (int j = i + 1; j < m; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  std::vector<std::vector<int>> blocks;
  for (uint64_t mask : best_blocks) blocks.push_back(MaskToAttrs(u, mask));
  AmplificationPlan plan = BuildPlan(queries, phi, std::move(blocks),
                                     std::move(best_assign), mode,
                                     SearchKind::kExact);
  plan.partitions_visited = visited;
  return plan;
}

AmplificationPlan NaiveSearch(std::span<const MarginalQuery> queries,
                              std::span<const double> phi, AmplifyMode mode) {
  std::vector<size_t> order(queries.size());
  std::iota(order.begin(), order.end(), 0);
  auto saving = [&](size_t i) {
    const double p = McarFactor(phi, queries[i].attrs);
    return queries[i].epsilon - QueryCost(p, queries[i], mode);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t x, size_t y) { return saving(x) > saving(y); });
  std::vector<std::vector<int>> blocks;
  std::vector<int> assignment(queries.size(), -1);
  std::vector<int> used;
  for (size_t i : order) {
    std::vector<int> attrs = queries[i].attrs;
    std::sort(attrs.begin(), attrs.end());
    const bool overlaps = std::any_of(attrs.begin(), attrs.end(), [&](int a) {
      return std::find(used.begin(), used.end(), a) != used.end();
    });
    if (overlaps) continue;
    used.insert(used.end(), attrs.begin(), attrs.end());
    assignment[i] = static_cast<int>(blocks.size());
    blocks.push_back(std::move(attrs));
  }
  return BuildPlan(queries, phi, std::move(blocks), std::move(assignment), mode,
                   SearchKind::kNaive);
}

absl::StatusOr<AmplificationPlan> GreedySearch(
    std::span<const MarginalQuery> queries, std::span<const double> phi,
    AmplifyMode mode) {
  const Universe u = MakeUniverse(queries, phi);
  std::vector<std::vector<int>> blocks;
  for (int a : u.attrs) blocks.push_back({a});
  auto current = EvaluatePartition(queries, phi, blocks, mode);
  if (!current.ok()) return current.status();
  int64_t visited = 1;
  while (true) {
    std::vector<std::vector<int>> best_blocks;
    double best = current->amplified_epsilon;
    for (size_t x = 0; x < blocks.size(); ++x) {
      for (size_t y = x + 1; y < blocks.size(); ++y) {
        std::vector<std::vector<int>> merged;
        for (size_t b = 0; b < blocks.size(); ++b) {
          if (b != y) merged.push_back(blocks[b]);
        }
        merged[x].insert(merged[x].end(), blocks[y].begin(), blocks[y].end());
        std::sort(merged[x].begin(), merged[x].end());
        auto plan = EvaluatePartition(queries, phi, merged, mode);
        ++visited;
        if (plan.ok() && plan->amplified_epsilon < best) {
          best = plan->amplified_epsilon;
          best_blocks = std::move(merged);
        }
      }
    }
    if (best_blocks.empty()) break;
    blocks = std::move(best_blocks);
    current = EvaluatePartition(queries, phi, blocks, mode);
  }
  // The naive baseline's blocks, completed with singletons, are a candidate
  // too when they form a valid partition.
  AmplificationPlan naive = NaiveSearch(queries, phi, mode);
  std::vector<std::vector<int>> naive_blocks = naive.blocks;
  for (int a : u.attrs) {
    bool covered = false;
    for (const auto& b : naive.blocks) {
      covered |= std::find(b.begin(), b.end(), a) != b.end();
    }
    if (!covered) naive_blocks.push_back({a});
  }
  auto from_naive = EvaluatePartition(queries, phi, naive_blocks, mode);
  ++visited;
  if (from_naive.ok() &&
      from_naive->amplified_epsilon < current->amplified_epsilon) {
    current = std::move(from_naive);
  }
  current->search = SearchKind::kGreedy;
  current->partitions_visited = visited;
  return current;
}

}  // namespace

absl::StatusOr<SearchKind> ParseSearchKind(const std::string& name) {
  if (name == "exact") return SearchKind::kExact;
  if (name == "greedy") return SearchKind::kGreedy;
  if (name == "naive") return SearchKind::kNaive;
  return absl::InvalidArgumentError(absl::StrCat("unknown search \"", name, "\""));
}

std::string SearchKindName(SearchKind kind) {
  switch (kind) {
    case SearchKind::kExact:
      return "exact";
    case SearchKind::kGreedy:
      return "greedy";
    case SearchKind::kNaive:
      return "naive";
  }
  return "?";
}

absl::Status ValidateQueries(std::span<const MarginalQuery> queries,
                             std::span<const double> phi) {
  if (queries.empty()) return absl::InvalidArgumentError("no marginal queries");
  for (double p : phi) {
    if (!(p >= 0.0 && p <= 1.0)) {
      return absl::InvalidArgumentError("phi entries must lie in [0, 1]");
    }
  }
  for (size_t i = 0; i < queries.size(); ++i) {
    const MarginalQuery& q = queries[i];
    if (q.attrs.empty()) {
      return absl::InvalidArgumentError(absl::StrCat("query ", i, " has no attributes"));
    }
    if (!(q.epsilon > 0) || !(q.delta >= 0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("query ", i, " needs epsilon > 0 and delta >= 0"));
    }
    std::vector<int> sorted = q.attrs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return absl::InvalidArgumentError(absl::StrCat("query ", i, " repeats an attribute"));
    }
    if (sorted.front() < 0 || sorted.back() >= static_cast<int>(phi.size())) {
      return absl::InvalidArgumentError(
          absl::StrCat("query ", i, " references an attribute outside phi"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<AmplificationPlan> OptimalPartition(
    std::span<const MarginalQuery> queries, std::span<const double> phi,
    SearchKind search, AmplifyMode mode, const PartitionOptions& options) {
  if (auto s = ValidateQueries(queries, phi); !s.ok()) return s;
  switch (search) {
    case SearchKind::kExact:
      return ExactSearch(queries, phi, mode, options);
    case SearchKind::kGreedy:
      return GreedySearch(queries, phi, mode);
    case SearchKind::kNaive:
      return NaiveSearch(queries, phi, mode);
  }
  return absl::InternalError("unhandled search");
}

absl::StatusOr<AmplificationPlan> EvaluatePartition(
    std::span<const MarginalQuery> queries, std::span<const double> phi,
    std::vector<std::vector<int>> blocks, AmplifyMode mode) {
  std::vector<int> owner(phi.size(), -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) return absl::InvalidArgumentError("empty block");
    std::sort(blocks[b].begin(), blocks[b].end());
    for (int a : blocks[b]) {
      if (a < 0 || a >= static_cast<int>(phi.size()) || owner[a] >= 0) {
        return absl::InvalidArgumentError("blocks must be disjoint attribute sets");
      }
      owner[a] = static_cast<int>(b);
    }
  }
  std::vector<int> assignment(queries.size(), -1);
  for (size_t i = 0; i < queries.size(); ++i) {
    double best = kInf;
    for (size_t b = 0; b < blocks.size(); ++b) {
      const bool contained = std::all_of(
          blocks[b].begin(), blocks[b].end(), [&](int a) {
            return std::find(queries[i].attrs.begin(), queries[i].attrs.end(), a) !=
                   queries[i].attrs.end();
          });
      const double p = McarFactor(phi, blocks[b]);
      if (contained && p < best) {
        best = p;
        assignment[i] = static_cast<int>(b);
      }
    }
    if (assignment[i] < 0) {
      return absl::NotFoundError(
          absl::StrCat("query ", i, " contains no block of the partition"));
    }
  }
  return BuildPlan(queries, phi, std::move(blocks), std::move(assignment), mode,
                   SearchKind::kExact);
}

absl::Status ValidatePlan(const AmplificationPlan& plan,
                          std::span<const MarginalQuery> queries) {
  std::vector<int> seen;
  for (const auto& b : plan.blocks) {
    for (int a : b) {
      if (std::find(seen.begin(), seen.end(), a) != seen.end()) {
        return absl::InvalidArgumentError("blocks overlap");
      }
      seen.push_back(a);
    }
  }
  if (plan.assignment.size() != queries.size()) {
    return absl::InvalidArgumentError("assignment does not cover the queries");
  }
  for (size_t i = 0; i < queries.size(); ++i) {
    const int b = plan.assignment[i];
    if (b < 0) {
      return absl::FailedPreconditionError(
          absl::StrCat("query ", i, " has no amplification block"));
    }
    if (b >= static_cast<int>(plan.blocks.size())) {
      return absl::InvalidArgumentError("assignment out of range");
    }
    for (int a : plan.blocks[b]) {
      if (std::find(queries[i].attrs.begin(), queries[i].attrs.end(), a) ==
          queries[i].attrs.end()) {
        return absl::InvalidArgumentError(
            absl::StrCat("query ", i, " is assigned a block it does not contain"));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<double> ColumnwiseAmplify(std::span<const double> phi,
                                         std::span<const double> epsilons,
                                         AmplifyMode mode) {
  if (phi.size() != epsilons.size() || phi.empty()) {
    return absl::InvalidArgumentError(
        "need one epsilon per attribute and at least one attribute");
  }
  size_t j = 0;
  for (size_t i = 0; i < phi.size(); ++i) {
    if (!(phi[i] >= 0.0 && phi[i] <= 1.0) || !(epsilons[i] >= 0.0)) {
      return absl::InvalidArgumentError("phi in [0, 1] and epsilon >= 0 required");
    }
    if (1.0 - phi[i] < 1.0 - phi[j]) j = i;
  }
  double total = 0.0;
  for (size_t i = 0; i < phi.size(); ++i) {
    total += i == j ? AmplifiedEpsilon(1.0 - phi[j], epsilons[j], mode) : epsilons[i];
  }
  return total;
}

nlohmann::json PlanToJson(const AmplificationPlan& plan) {
  nlohmann::json j;
  j["search"] = SearchKindName(plan.search);
  j["heuristic"] = plan.search == SearchKind::kGreedy;
  j["mode"] = AmplifyModeName(plan.mode);
  j["blocks"] = plan.blocks;
  j["factors"] = plan.factors;
  j["assignment"] = plan.assignment;
  j["amplified_epsilon"] = plan.amplified_epsilon;
  j["linear_epsilon"] = plan.linear_epsilon;
  j["exact_epsilon"] = plan.exact_epsilon;
  j["amplified_delta"] = plan.amplified_delta;
  j["total_epsilon"] = plan.total_epsilon;
  j["ratio"] = plan.total_epsilon > 0 ? plan.amplified_epsilon / plan.total_epsilon : 1.0;
  j["partitions_visited"] = plan.partitions_visited;
  return j;
}

}  // namespace missdp
