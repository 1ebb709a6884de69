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

#ifndef MISSDP_METRICS_F1_EVALUATION_H_
#define MISSDP_METRICS_F1_EVALUATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "missdp/metrics/classifiers.h"
#include "missdp/tabular/dataset.h"

namespace missdp {

// Binary label derived from the real data: categorical targets are the
// majority class vs the rest, numerical targets are value > observed median.
struct TargetBinarizer {
  int attr = -1;
  bool categorical = true;
  int positive_code = 0;
  double median = 0.0;

  uint8_t Label(const Dataset& d, int64_t row) const;
};

absl::StatusOr<TargetBinarizer> MakeBinarizer(const Dataset& real, int attr);

// One-hot encoding of every attribute except the target. Categorical codes
// and numerical bins each get one column per code. Missing cells take the
// fill code (mode, or the bin of the mean) computed on the real data.
class Featurizer {
 public:
  static Featurizer Create(const Dataset& real, int target);

  int width() const { return width_; }
  FeatureMatrix Encode(const Dataset& d, std::span<const int64_t> rows) const;
  const std::vector<int>& fill_codes() const { return fill_; }

 private:
  int target_ = -1;
  int width_ = 0;
  std::vector<int> offset_;
  std::vector<int> fill_;
};

struct F1Entry {
  int target = -1;
  std::string target_name;
  std::string classifier;
  double f1 = 0.0;
};

struct F1Result {
  double average = 0.0;
  std::vector<F1Entry> entries;
  std::vector<std::string> notes;
};

// Trains every built-in classifier on a seeded 70% of the synthetic rows
// and scores F1 on a seeded 30% of the real rows, for each target.
// Targets with a single class on either side are skipped with a note.
absl::StatusOr<F1Result> F1Evaluation(const Dataset& real, const Dataset& synth,
                                      std::span<const int> targets,
                                      uint64_t seed);

// Convenience overload returning only the grand average.
absl::StatusOr<double> F1Average(const Dataset& real, const Dataset& synth,
                                 std::span<const int> targets, uint64_t seed);

}  // namespace missdp

#endif  // MISSDP_METRICS_F1_EVALUATION_H_
