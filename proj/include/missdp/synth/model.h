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

#ifndef MISSDP_SYNTH_MODEL_H_
#define MISSDP_SYNTH_MODEL_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "missdp/dpcore/random.h"
#include "missdp/tabular/dataset.h"
#include "missdp/tabular/schema.h"

namespace missdp {

// One node of a Bayesian network: a normalized joint table Pr*[X, Ψ] over
// (attr, parents...), row-major with the last parent varying fastest.
struct BayesEntry {
  int attr = 0;
  std::vector<int> parents;
  std::vector<double> table;
  // Rows the table was counted from.
  int64_t observed_rows = 0;
};

struct BayesModel {
  Schema schema;
  int degree = 2;
  std::vector<BayesEntry> network;
};

// Conditional table Pr*[target | parents], one row per parent assignment
// (last parent fastest), each row a distribution over the target's codes.
struct Predictor {
  int target = 0;
  std::vector<int> parents;
  std::vector<double> table;
  int64_t observed_rows = 0;
};

struct ColumnModel {
  Schema schema;
  int parent_cap = 2;
  std::vector<int> sequence;
  // Distribution of the first attribute of `sequence`.
  std::vector<double> first_hist;
  int64_t first_observed = 0;
  // Predictors for sequence[1], sequence[2], ...
  std::vector<Predictor> predictors;
};

using SynthModel = std::variant<BayesModel, ColumnModel>;

// Counts of private releases issued while fitting.
struct MechanismCounts {
  int exponential = 0;
  int noisy_tables = 0;
  friend bool operator==(const MechanismCounts&, const MechanismCounts&) = default;
};

absl::Status ValidateModel(const BayesModel& m);
absl::Status ValidateModel(const ColumnModel& m);
absl::Status ValidateModel(const SynthModel& m);

// Ancestral sampling in network (or sequence) order. The output has no
// missing cells; numerical cells take bin midpoints.
absl::StatusOr<Dataset> GenerateBayes(const BayesModel& m, int64_t n_out,
                                      Rng& rng);
absl::StatusOr<Dataset> GenerateColumnwise(const ColumnModel& m, int64_t n_out,
                                           Rng& rng);
absl::StatusOr<Dataset> Generate(const SynthModel& m, int64_t n_out, Rng& rng);

// {"kind": "bayes" | "columnwise", "schema": {...}, ...}; attributes are
// referenced by position in the embedded schema.
nlohmann::json ModelToJson(const SynthModel& m);
absl::StatusOr<SynthModel> ModelFromJson(const nlohmann::json& j);
absl::Status SaveModel(const SynthModel& m, const std::string& path);
absl::StatusOr<SynthModel> LoadModel(const std::string& path);

}  // namespace missdp

#endif  // MISSDP_SYNTH_MODEL_H_
