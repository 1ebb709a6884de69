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

#ifndef MISSDP_SYNTH_PIPELINE_H_
#define MISSDP_SYNTH_PIPELINE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "missdp/dpcore/budget_ledger.h"
#include "missdp/synth/columnwise.h"
#include "missdp/synth/impute.h"
#include "missdp/synth/model.h"
#include "missdp/tabular/dataset.h"

namespace missdp {

enum class Generator { kPrivBayes, kPrivBayesE, kKamino, kKaminoI };

enum class Wrapper {
  kNone,
  // Drop incomplete rows, then run the generator on the full budget.
  kCompleteRow,
  // Impute first (possibly spending split_fraction of the budget), then
  // run the generator on what is left.
  kImputeFirst,
};

absl::StatusOr<Generator> ParseGenerator(const std::string& name);
std::string GeneratorName(Generator g);

struct SynthConfig {
  Generator generator = Generator::kPrivBayesE;
  Wrapper wrapper = Wrapper::kNone;
  ImputerKind imputer = ImputerKind::kRandom;
  double split_fraction = 0.5;
  double epsilon = 1.0;
  // Negative selects DefaultDelta(rows).
  double delta = -1.0;
  int degree = 2;
  double structure_fraction = 0.5;
  int parent_cap = 2;
  SequenceOrder sequence = SequenceOrder::kSchema;
  uint64_t seed = 0;
  // Negative selects the input row count.
  int64_t n_out = -1;
};

absl::Status ValidateConfig(const SynthConfig& cfg);

// {"method": "privbayese"}
// {"method": "complete_row", "inner": "privbayes"}
// {"method": "impute_first", "imputer": "mean_mode", "split_fraction": 0.25,
//  "inner": "kamino"}
// plus optional epsilon ("inf" allowed), delta, degree, structure_fraction,
// parent_cap, sequence, seed, n_out.
absl::StatusOr<SynthConfig> SynthConfigFromJson(const nlohmann::json& j);
nlohmann::json SynthConfigToJson(const SynthConfig& cfg);
// Short label such as "impute_first(mean_mode,0.25,privbayes)".
std::string MethodLabel(const SynthConfig& cfg);

struct PipelineResult {
  Dataset synthetic;
  SynthModel model;
  // One entry per phase ("impute", "generate") with the budget it was given.
  BudgetLedger ledger;
  // Itemized spending inside each phase, keyed by phase label.
  std::vector<std::pair<std::string, BudgetLedger>> details;
  MechanismCounts calls;
  std::vector<std::string> notes;
};

absl::StatusOr<PipelineResult> RunPipeline(const Dataset& d,
                                           const SynthConfig& cfg);

nlohmann::json PipelineLedgerToJson(const PipelineResult& r);

}  // namespace missdp

#endif  // MISSDP_SYNTH_PIPELINE_H_
