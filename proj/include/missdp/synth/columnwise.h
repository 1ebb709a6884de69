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

#ifndef MISSDP_SYNTH_COLUMNWISE_H_
#define MISSDP_SYNTH_COLUMNWISE_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "missdp/dpcore/budget_ledger.h"
#include "missdp/dpcore/random.h"
#include "missdp/synth/model.h"
#include "missdp/tabular/dataset.h"

namespace missdp {

enum class ColumnVariant {
  // Train on rows complete on every attribute (Kamino).
  kCompleteRow,
  // Learn column by column and fill each column's missing cells with its
  // freshly trained predictor before moving on (KaminoI).
  kImpute,
};

enum class SequenceOrder {
  kSchema,
  // Decreasing fraction of missing cells; ties keep schema order.
  kMissingDescending,
};

absl::StatusOr<SequenceOrder> ParseSequenceOrder(const std::string& name);
std::string SequenceOrderName(SequenceOrder order);

struct ColumnOptions {
  double epsilon = 1.0;
  double delta = 1e-6;
  int parent_cap = 2;
  SequenceOrder order = SequenceOrder::kSchema;
  // Overrides `order` when non-empty.
  std::vector<int> sequence;
};

struct ColumnFit {
  ColumnModel model;
  // The training data after the variant's treatment: complete rows, or the
  // input with every missing cell imputed.
  Dataset working;
  MechanismCounts calls;
};

// The first attribute's histogram takes eps/|A| with Gaussian noise at
// delta/2. The rest is shared evenly by |A| - 1 predictors; each spends half
// choosing parents (exponential mechanism on mutual information) and half on
// a Laplace-noised conditional table.
absl::StatusOr<ColumnFit> FitColumnwise(const Dataset& d,
                                        const ColumnOptions& options,
                                        ColumnVariant variant, Rng& rng,
                                        BudgetLedger& ledger);

std::vector<int> DefaultSequence(const Dataset& d, SequenceOrder order);

}  // namespace missdp

#endif  // MISSDP_SYNTH_COLUMNWISE_H_
