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

#include "missdp/synth/bayes.h"

#include <algorithm>
#include <limits>

#include "absl/strings/str_cat.h"
#include "missdp/dpcore/mechanisms.h"
#include "missdp/tabular/marginal.h"
#include "table_util.h"

namespace missdp {
namespace {

struct Candidate {
  int attr;
  std::vector<int> parents;
};

}  // namespace

absl::StatusOr<BayesFit> FitPrivBayes(const Dataset& d,
                                      const BayesOptions& options,
                                      BayesVariant variant, Rng& rng,
                                      BudgetLedger& ledger) {
  const int k = d.cols();
  if (k == 0) return absl::InvalidArgumentError("dataset has no attributes");
  if (options.degree < 1) return absl::InvalidArgumentError("degree must be >= 1");
  if (!(options.epsilon > 0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!(options.structure_fraction > 0 && options.structure_fraction < 1)) {
    return absl::InvalidArgumentError("structure_fraction must lie in (0, 1)");
  }
  const std::vector<int> all = AllAttributes(d.schema());
  const Dataset base =
      variant == BayesVariant::kCompleteRow ? CompleteRows(d, all) : d;
  if (base.rows() == 0) {
    return absl::FailedPreconditionError(
        variant == BayesVariant::kCompleteRow
            ? "no complete rows: complete-row training has no input data"
            : "dataset has no rows");
  }

  const double eps1 = options.epsilon * options.structure_fraction;
  const double eps2 = IsInfinite(options.epsilon) ? kInfiniteEpsilon
                                                  : options.epsilon - eps1;
  const double select_eps = eps1 / k;
  const double table_eps = eps2 / k;

  BayesFit fit;
  BayesModel& model = fit.model;
  model.schema = d.schema();
  model.degree = options.degree;

  std::vector<int> placed = {static_cast<int>(UniformIndex(rng, k))};
  std::vector<bool> is_placed(k, false);
  is_placed[placed[0]] = true;
  model.network.push_back({placed[0], {}, {}, 0});

  for (int step = 1; step < k; ++step) {
    std::vector<int> pool = placed;
    std::sort(pool.begin(), pool.end());
    const int size = std::min<int>(options.degree, static_cast<int>(pool.size()));
    const auto parent_sets = internal::Combinations(pool, size);
    std::vector<Candidate> candidates;
    std::vector<double> scores;
    int64_t min_rows = std::numeric_limits<int64_t>::max();
    for (int x = 0; x < k; ++x) {
      if (is_placed[x]) continue;
      for (const auto& parents : parent_sets) {
        std::vector<int> attrs = {x};
        attrs.insert(attrs.end(), parents.begin(), parents.end());
        auto table = Marginal(base, attrs);
        if (!table.ok()) return table.status();
        candidates.push_back({x, parents});
        scores.push_back(MutualInformationBits(*table));
        min_rows = std::min(min_rows, table->observed_rows);
      }
    }
    auto pick = ExponentialMechanism(
        scores, internal::MutualInformationSensitivity(min_rows), select_eps,
        rng);
    if (!pick.ok()) return pick.status();
    if (auto s = ledger.Spend(absl::StrCat("structure/", step), select_eps);
        !s.ok()) {
      return s;
    }
    ++fit.calls.exponential;
    const Candidate& chosen = candidates[*pick];
    placed.push_back(chosen.attr);
    is_placed[chosen.attr] = true;
    model.network.push_back({chosen.attr, chosen.parents, {}, 0});
  }

  auto scale = LaplaceScale(static_cast<double>(k), eps2);
  if (!scale.ok()) return scale.status();
  for (BayesEntry& e : model.network) {
    std::vector<int> attrs = {e.attr};
    attrs.insert(attrs.end(), e.parents.begin(), e.parents.end());
    auto table = Marginal(base, attrs);
    if (!table.ok()) return table.status();
    e.observed_rows = table->observed_rows;
    e.table = std::move(table->counts);
    if (auto s = AddLaplaceNoise(e.table, *scale, rng); !s.ok()) return s;
    internal::ClampNormalize(e.table);
    if (auto s = ledger.Spend(
            absl::StrCat("table/", d.schema().attribute(e.attr).name()),
            table_eps);
        !s.ok()) {
      return s;
    }
    ++fit.calls.noisy_tables;
  }
  return fit;
}

absl::StatusOr<Dataset> GenerateBayes(const BayesModel& m, int64_t n_out,
                                      Rng& rng) {
  if (auto s = ValidateModel(m); !s.ok()) return s;
  if (n_out < 0) return absl::InvalidArgumentError("negative row count");
  const Schema& s = m.schema;
  const int k = s.size();

  struct Node {
    int attr;
    std::vector<int> parents;
    size_t card;
    size_t assignments;
    std::vector<double> marginal;
  };
  std::vector<Node> nodes;
  for (const BayesEntry& e : m.network) {
    Node node{e.attr, e.parents,
              static_cast<size_t>(s.attribute(e.attr).cardinality()),
              internal::AssignmentCount(s, e.parents), {}};
    node.marginal.assign(node.card, 0.0);
    for (size_t x = 0; x < node.card; ++x) {
      for (size_t p = 0; p < node.assignments; ++p) {
        node.marginal[x] += e.table[x * node.assignments + p];
      }
    }
    nodes.push_back(std::move(node));
  }

  std::vector<int32_t> codes(static_cast<size_t>(n_out) * k);
  std::vector<int32_t> row(k, 0);
  std::vector<double> slice;
  for (int64_t i = 0; i < n_out; ++i) {
    for (size_t t = 0; t < nodes.size(); ++t) {
      const Node& node = nodes[t];
      const std::vector<double>& table = m.network[t].table;
      const size_t p = internal::AssignmentIndex(s, node.parents, row);
      slice.assign(node.card, 0.0);
      double mass = 0.0;
      for (size_t x = 0; x < node.card; ++x) {
        slice[x] = table[x * node.assignments + p];
        mass += slice[x];
      }
      const size_t x = mass > 0.0 ? SampleDiscrete(rng, slice)
                                  : SampleDiscrete(rng, node.marginal);
      row[node.attr] = static_cast<int32_t>(x);
      codes[static_cast<size_t>(node.attr) * n_out + i] = row[node.attr];
    }
  }
  return Dataset::FromCodes(s, n_out, codes);
}

}  // namespace missdp
