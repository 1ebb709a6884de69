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

#include "missdp/synth/columnwise.h"

#include <algorithm>
#include <limits>
#include <set>

#include "absl/strings/str_cat.h"
#include "missdp/dpcore/mechanisms.h"
#include "missdp/tabular/marginal.h"
#include "table_util.h"

namespace missdp {
namespace {

// Fills the missing cells of column `attr` by sampling its conditional table
// given each row's (already complete) parent codes.
Dataset ImputeColumn(const Dataset& d, const Predictor& p, Rng& rng) {
  const Schema& s = d.schema();
  const size_t card = s.attribute(p.target).cardinality();
  std::vector<double> values;
  values.reserve(static_cast<size_t>(d.rows()) * d.cols());
  for (int j = 0; j < d.cols(); ++j) {
    auto col = d.column(j);
    values.insert(values.end(), col.begin(), col.end());
  }
  std::vector<int32_t> row(d.cols(), 0);
  for (int64_t i = 0; i < d.rows(); ++i) {
    if (!d.is_missing(i, p.target)) continue;
    for (int a : p.parents) row[a] = d.code(i, a);
    const size_t offset = internal::AssignmentIndex(s, p.parents, row) * card;
    const size_t x = SampleDiscrete(
        rng, std::span<const double>(p.table).subspan(offset, card));
    values[static_cast<size_t>(p.target) * d.rows() + i] =
        s.attribute(p.target).ValueOfCode(static_cast<int>(x));
  }
  return *Dataset::Create(s, d.rows(), std::move(values));
}

Dataset ImputeFirst(const Dataset& d, int attr, std::span<const double> hist,
                    Rng& rng) {
  Predictor p{attr, {}, std::vector<double>(hist.begin(), hist.end()), 0};
  return ImputeColumn(d, p, rng);
}

}  // namespace

absl::StatusOr<SequenceOrder> ParseSequenceOrder(const std::string& name) {
  if (name == "schema") return SequenceOrder::kSchema;
  if (name == "missing_desc") return SequenceOrder::kMissingDescending;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown sequence order \"", name, "\""));
}

std::string SequenceOrderName(SequenceOrder order) {
  return order == SequenceOrder::kSchema ? "schema" : "missing_desc";
}

std::vector<int> DefaultSequence(const Dataset& d, SequenceOrder order) {
  std::vector<int> seq = AllAttributes(d.schema());
  if (order == SequenceOrder::kMissingDescending) {
    std::stable_sort(seq.begin(), seq.end(), [&](int a, int b) {
      return d.MissingCount(a) > d.MissingCount(b);
    });
  }
  return seq;
}

absl::StatusOr<ColumnFit> FitColumnwise(const Dataset& d,
                                        const ColumnOptions& options,
                                        ColumnVariant variant, Rng& rng,
                                        BudgetLedger& ledger) {
  const int k = d.cols();
  if (k == 0) return absl::InvalidArgumentError("dataset has no attributes");
  if (options.parent_cap < 1) {
    return absl::InvalidArgumentError("parent cap must be >= 1");
  }
  if (!(options.epsilon > 0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!IsInfinite(options.epsilon) && !(options.delta > 0 && options.delta < 1)) {
    return absl::InvalidArgumentError(
        "the Gaussian first histogram needs delta in (0, 1)");
  }
  std::vector<int> seq = options.sequence.empty()
                             ? DefaultSequence(d, options.order)
                             : options.sequence;
  {
    std::set<int> unique(seq.begin(), seq.end());
    if (static_cast<int>(seq.size()) != k || static_cast<int>(unique.size()) != k ||
        *unique.begin() < 0 || *unique.rbegin() >= k) {
      return absl::InvalidArgumentError("sequence must be a permutation of the attributes");
    }
  }

  ColumnFit fit;
  const std::vector<int> all = AllAttributes(d.schema());
  fit.working = variant == ColumnVariant::kCompleteRow ? CompleteRows(d, all) : d;
  if (fit.working.rows() == 0) {
    return absl::FailedPreconditionError(
        variant == ColumnVariant::kCompleteRow
            ? "no complete rows: complete-row training has no input data"
            : "dataset has no rows");
  }
  const Schema& s = d.schema();
  ColumnModel& model = fit.model;
  model.schema = s;
  model.parent_cap = options.parent_cap;
  model.sequence = seq;

  const double eps1 = k > 1 ? options.epsilon / k : options.epsilon;
  const double eps2 = IsInfinite(options.epsilon) ? kInfiniteEpsilon
                                                  : options.epsilon - eps1;
  const double per_predictor = k > 1 ? eps2 / (k - 1) : 0.0;
  const double delta1 = options.delta / 2;

  // First attribute: Gaussian-noised histogram of its observed values.
  {
    auto table = Marginal(fit.working, std::vector<int>{seq[0]});
    if (!table.ok()) return table.status();
    model.first_observed = table->observed_rows;
    model.first_hist = std::move(table->counts);
    if (!IsInfinite(eps1)) {
      auto sigma = eps1 < 1.0 ? GaussianSigma(eps1, delta1, 1.0)
                              : AnalyticGaussianSigma(eps1, delta1, 1.0);
      if (!sigma.ok()) return sigma.status();
      if (auto st = AddGaussianNoise(model.first_hist, *sigma, rng); !st.ok()) {
        return st;
      }
    }
    internal::ClampNormalize(model.first_hist);
    if (auto st = ledger.Spend("first_hist/" + s.attribute(seq[0]).name(),
                               eps1, IsInfinite(eps1) ? 0.0 : delta1);
        !st.ok()) {
      return st;
    }
    ++fit.calls.noisy_tables;
    if (variant == ColumnVariant::kImpute && fit.working.MissingCount(seq[0]) > 0) {
      fit.working = ImputeFirst(fit.working, seq[0], model.first_hist, rng);
    }
  }

  auto scale = LaplaceScale(1.0, per_predictor / 2);
  for (int j = 1; j < k; ++j) {
    const int target = seq[j];
    const std::string& name = s.attribute(target).name();
    std::vector<int> earlier(seq.begin(), seq.begin() + j);
    std::sort(earlier.begin(), earlier.end());

    std::vector<std::vector<int>> candidates;
    for (int size = 1; size <= std::min(options.parent_cap, j); ++size) {
      for (auto& c : internal::Combinations(earlier, size)) {
        candidates.push_back(std::move(c));
      }
    }
    std::vector<double> scores;
    int64_t min_rows = std::numeric_limits<int64_t>::max();
    for (const auto& parents : candidates) {
      std::vector<int> attrs = {target};
      attrs.insert(attrs.end(), parents.begin(), parents.end());
      auto table = Marginal(fit.working, attrs);
      if (!table.ok()) return table.status();
      scores.push_back(MutualInformationBits(*table));
      min_rows = std::min(min_rows, table->observed_rows);
    }
    auto pick = ExponentialMechanism(
        scores, internal::MutualInformationSensitivity(min_rows),
        per_predictor / 2, rng);
    if (!pick.ok()) return pick.status();
    if (auto st = ledger.Spend("select/" + name, per_predictor / 2); !st.ok()) {
      return st;
    }
    ++fit.calls.exponential;

    Predictor p;
    p.target = target;
    p.parents = candidates[*pick];
    std::vector<int> attrs = p.parents;
    attrs.push_back(target);
    auto table = Marginal(fit.working, attrs);
    if (!table.ok()) return table.status();
    p.observed_rows = table->observed_rows;
    p.table = std::move(table->counts);
    if (!scale.ok()) return scale.status();
    if (auto st = AddLaplaceNoise(p.table, *scale, rng); !st.ok()) return st;
    if (auto st = ledger.Spend("table/" + name, per_predictor / 2); !st.ok()) {
      return st;
    }
    ++fit.calls.noisy_tables;

    const size_t card = s.attribute(target).cardinality();
    std::vector<double> marginal(card, 0.0);
    for (double& v : p.table) v = std::max(v, 0.0);
    for (size_t o = 0; o < p.table.size(); ++o) marginal[o % card] += p.table[o];
    internal::ClampNormalize(marginal);
    for (size_t row = 0; row < p.table.size(); row += card) {
      std::span<double> slice(p.table.data() + row, card);
      double mass = 0.0;
      for (double v : slice) mass += v;
      if (mass > 0.0) {
        internal::ClampNormalize(slice);
      } else {
        std::copy(marginal.begin(), marginal.end(), slice.begin());
      }
    }
    if (variant == ColumnVariant::kImpute && fit.working.MissingCount(target) > 0) {
      fit.working = ImputeColumn(fit.working, p, rng);
    }
    model.predictors.push_back(std::move(p));
  }
  return fit;
}

absl::StatusOr<Dataset> GenerateColumnwise(const ColumnModel& m, int64_t n_out,
                                           Rng& rng) {
  if (auto st = ValidateModel(m); !st.ok()) return st;
  if (n_out < 0) return absl::InvalidArgumentError("negative row count");
  const Schema& s = m.schema;
  const int k = s.size();
  std::vector<int32_t> codes(static_cast<size_t>(n_out) * k);
  std::vector<int32_t> row(k, 0);
  for (int64_t i = 0; i < n_out; ++i) {
    row[m.sequence[0]] = static_cast<int32_t>(SampleDiscrete(rng, m.first_hist));
    codes[static_cast<size_t>(m.sequence[0]) * n_out + i] = row[m.sequence[0]];
    for (const Predictor& p : m.predictors) {
      const size_t card = s.attribute(p.target).cardinality();
      const size_t offset = internal::AssignmentIndex(s, p.parents, row) * card;
      row[p.target] = static_cast<int32_t>(SampleDiscrete(
          rng, std::span<const double>(p.table).subspan(offset, card)));
      codes[static_cast<size_t>(p.target) * n_out + i] = row[p.target];
    }
  }
  return Dataset::FromCodes(s, n_out, codes);
}

}  // namespace missdp
