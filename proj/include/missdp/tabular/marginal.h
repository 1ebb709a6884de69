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

#ifndef MISSDP_TABULAR_MARGINAL_H_
#define MISSDP_TABULAR_MARGINAL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "missdp/tabular/dataset.h"

namespace missdp {

// Dense contingency table over an ordered attribute list. Cells are laid out
// row-major with the last attribute varying fastest.
struct ContingencyTable {
  std::vector<int> attrs;
  std::vector<int> cardinalities;
  std::vector<double> counts;
  // Rows complete on `attrs`; equals the sum of counts before any noise.
  int64_t observed_rows = 0;

  size_t size() const { return counts.size(); }
  size_t Offset(std::span<const int> codes) const;
  // Inverse of Offset.
  std::vector<int> Decode(size_t offset) const;
};

struct MarginalOptions {
  int64_t cell_cap = 10'000'000;
};

// 1 for rows with a missing cell in any of `attrs`, else 0.
std::vector<uint8_t> IncompleteRowFlags(const Dataset& d,
                                        std::span<const int> attrs);
int64_t CountCompleteRows(const Dataset& d, std::span<const int> attrs);

// Rows with no missing cell among `attrs`, in their original order.
Dataset CompleteRows(const Dataset& d, std::span<const int> attrs);
std::vector<int> AllAttributes(const Schema& schema);

// Tallies rows complete on `attrs`. Rejects an empty, duplicated or
// out-of-range attribute list and tables larger than the cell cap.
absl::StatusOr<ContingencyTable> Marginal(const Dataset& d,
                                          std::span<const int> attrs,
                                          const MarginalOptions& options = {});

// Sums out every attribute not in `keep` (which must be a subsequence of
// table.attrs, in the same order).
ContingencyTable Project(const ContingencyTable& table,
                         std::span<const int> keep);

// I(first attribute; remaining attributes) of the table, in bits, with
// 0 log 0 = 0. Zero when the table is empty.
double MutualInformationBits(const ContingencyTable& table);

// I(X; parents) over rows complete on {x} and parents.
absl::StatusOr<double> MutualInformation(const Dataset& d, int x,
                                         std::span<const int> parents,
                                         const MarginalOptions& options = {});

}  // namespace missdp

#endif  // MISSDP_TABULAR_MARGINAL_H_
