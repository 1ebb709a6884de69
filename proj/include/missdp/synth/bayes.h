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

#ifndef MISSDP_SYNTH_BAYES_H_
#define MISSDP_SYNTH_BAYES_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "missdp/dpcore/budget_ledger.h"
#include "missdp/dpcore/random.h"
#include "missdp/synth/model.h"
#include "missdp/tabular/dataset.h"

namespace missdp {

enum class BayesVariant {
  // Train on rows complete on every attribute (PrivBayes).
  kCompleteRow,
  // Each marginal uses rows complete on its own attributes (PrivBayesE).
  kPartialObservation,
};

struct BayesOptions {
  double epsilon = 1.0;
  int degree = 2;
  // Share of epsilon spent on structure learning.
  double structure_fraction = 0.5;
};

struct BayesFit {
  BayesModel model;
  MechanismCounts calls;
};

// Greedy structure search with the exponential mechanism on mutual
// information (|A| - 1 calls at eps1/|A| each), then one Laplace-noised table
// per attribute (scale |A|/eps2 on raw counts). Spends into `ledger`.
absl::StatusOr<BayesFit> FitPrivBayes(const Dataset& d,
                                      const BayesOptions& options,
                                      BayesVariant variant, Rng& rng,
                                      BudgetLedger& ledger);

}  // namespace missdp

#endif  // MISSDP_SYNTH_BAYES_H_
