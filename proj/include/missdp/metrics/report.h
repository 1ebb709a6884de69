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

#ifndef MISSDP_METRICS_REPORT_H_
#define MISSDP_METRICS_REPORT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "missdp/metrics/marginal_distance.h"
#include "missdp/tabular/dataset.h"

namespace missdp {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for one repetition
  std::vector<double> values;
};

MeanStd Summarize(std::vector<double> values);

struct EvaluateOptions {
  std::vector<int> kway = {1, 2};
  bool f1 = false;
  std::vector<int> targets;  // empty with f1 means every attribute
  uint64_t seed = 0;
  int reps = 3;
  DistanceKind distance = DistanceKind::kMaxCell;
};

struct UtilityReport {
  std::map<int, MeanStd> kway;
  bool has_f1 = false;
  MeanStd f1;
  // keyed by "<target>/<classifier>"
  std::map<std::string, MeanStd> f1_breakdown;
  std::vector<std::string> notes;
  uint64_t seed = 0;
  int reps = 0;
  DistanceKind distance = DistanceKind::kMaxCell;
};

absl::Status ValidateEvaluateOptions(const EvaluateOptions& options, int cols);

// Repetition r uses seed + r for subset sampling, splits and training.
absl::StatusOr<UtilityReport> Evaluate(const Dataset& real,
                                       const Dataset& synth,
                                       const EvaluateOptions& options);

nlohmann::json ReportToJson(const UtilityReport& report);
// Rows of metric,key,value; one row per statistic.
std::string ReportToCsv(const UtilityReport& report);

}  // namespace missdp

#endif  // MISSDP_METRICS_REPORT_H_
