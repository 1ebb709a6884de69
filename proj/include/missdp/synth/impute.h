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

#ifndef MISSDP_SYNTH_IMPUTE_H_
#define MISSDP_SYNTH_IMPUTE_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "missdp/dpcore/budget_ledger.h"
#include "missdp/dpcore/random.h"
#include "missdp/tabular/dataset.h"

namespace missdp {

enum class ImputerKind { kRandom, kMeanMode, kKamino };

absl::StatusOr<ImputerKind> ParseImputerKind(const std::string& name);
std::string ImputerName(ImputerKind kind);

// What a mean/mode imputer fills a column with. Numerical columns use
// `mean`; categorical columns sample from `probabilities`. Columns with no
// usable statistic fall back to a uniform draw.
struct ColumnFill {
  bool has_missing = false;
  bool uniform_fallback = false;
  double mean = 0.0;
  std::vector<double> probabilities;
};

struct ImputeStats {
  std::vector<ColumnFill> columns;
};

struct ImputeResult {
  Dataset data;
  std::vector<std::string> warnings;
};

// Non-private statistics of the observed cells.
ImputeStats ExactImputeStats(const Dataset& d);

// Statistics released under `epsilon`, split evenly across the columns with
// missing cells. Numerical columns noise the sum (sensitivity max - min after
// shifting by min) and the count (sensitivity 1) with half each; categorical
// columns noise the histogram (sensitivity 1). Each column's spend goes into
// `ledger` under "impute/<name>".
absl::StatusOr<ImputeStats> PrivateImputeStats(const Dataset& d, double epsilon,
                                               Rng& rng, BudgetLedger& ledger);

// Uniform draw from the domain (categorical) or the range (numerical).
ImputeResult RandomImpute(const Dataset& d, Rng& rng);

ImputeResult MeanModeImpute(const Dataset& d, const ImputeStats& stats,
                            Rng& rng);

enum class FillStatistic { kMean, kMedian, kMode };

// Deterministic fill: numerical cells take the mean, median or mode of the
// observed values; categorical cells always take the mode (lowest label on
// ties). A column with nothing observed keeps the range minimum or label 0.
Dataset StatisticImpute(const Dataset& d, FillStatistic statistic);

}  // namespace missdp

#endif  // MISSDP_SYNTH_IMPUTE_H_
