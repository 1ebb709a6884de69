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

#ifndef MISSDP_CLI_BENCH_H_
#define MISSDP_CLI_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "missdp/dpcore/mechanisms.h"
#include "missdp/missing/inject.h"
#include "missdp/synth/pipeline.h"
#include "missdp/tabular/dataset.h"

namespace missdp {

// Parses the command-line method syntax:
//   privbayes | privbayese | kamino | kamino-i
//   complete-row:<generator>
//   impute-first:<imputer>:<split>:<generator>
absl::StatusOr<SynthConfig> ParseMethod(const std::string& text);

// Builds a missing spec from a command-line mechanism name
// (mcar | mcar-global | mar | mnar) and a rate applied to every column.
absl::StatusOr<MissingSpec> MakeMissingSpec(const std::string& mechanism,
                                            double rate, int cols,
                                            uint64_t seed);

struct BenchOptions {
  std::vector<std::string> methods = {"privbayese", "complete-row:privbayes",
                                      "kamino-i", "complete-row:kamino"};
  std::vector<std::string> mechanisms = {"mcar-global"};
  std::vector<double> rates = {0.01, 0.05, 0.10, 0.20, 0.30};
  std::vector<double> epsilons = {0.5, 1, 3, 5, 10, kInfiniteEpsilon};
  std::vector<int> kway = {1, 2};
  int reps = 3;
  uint64_t seed = 0;
  int threads = 0;  // 0 selects the hardware concurrency
  // When non-empty, each cell also writes <cell_dir>/cell_<index>.csv.
  std::string cell_dir;
};

struct BenchRow {
  std::string method;
  std::string mechanism;
  double rate = 0.0;
  double epsilon = 0.0;
  std::string metric;
  double mean = 0.0;
  double std = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<std::string> notes;
};

absl::Status ValidateBenchOptions(const BenchOptions& options, int cols);

// Runs every (method, mechanism, rate, epsilon) cell on a bounded worker
// pool. Each repetition injects missing data into `complete`, synthesizes,
// and scores k-way distances against `complete`. Failed cells report NaN
// and a note. Row order follows the grid, not completion order.
absl::StatusOr<BenchResult> RunBench(const Dataset& complete,
                                     const BenchOptions& options);

// method,mechanism,rate,epsilon,metric,mean,std
std::string BenchToCsv(const std::vector<BenchRow>& rows);

}  // namespace missdp

#endif  // MISSDP_CLI_BENCH_H_
