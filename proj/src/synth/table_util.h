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

#ifndef MISSDP_SYNTH_TABLE_UTIL_H_
#define MISSDP_SYNTH_TABLE_UTIL_H_

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "missdp/kernels/kernels.h"
#include "missdp/tabular/schema.h"

namespace missdp::internal {

// Negative entries to zero, then normalized. All-zero mass becomes uniform.
inline void ClampNormalize(std::span<double> p) {
  const double total = kernels::Active().clamp_nonnegative_sum(p);
  if (total <= 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
    return;
  }
  for (double& v : p) v /= total;
}

// Sensitivity of empirical mutual information (in bits) over n rows.
inline double MutualInformationSensitivity(int64_t rows) {
  const double n = static_cast<double>(std::max<int64_t>(rows, 2));
  return (2.0 / n) * std::log2((n + 1.0) / 2.0) +
         ((n - 1.0) / n) * std::log2((n + 1.0) / (n - 1.0));
}

// Mixed-radix index of a parent assignment, last parent fastest.
inline size_t AssignmentIndex(const Schema& s, std::span<const int> attrs,
                              std::span<const int32_t> codes_by_attr) {
  size_t index = 0;
  for (int a : attrs) {
    index = index * s.attribute(a).cardinality() + codes_by_attr[a];
  }
  return index;
}

inline size_t AssignmentCount(const Schema& s, std::span<const int> attrs) {
  size_t count = 1;
  for (int a : attrs) count *= s.attribute(a).cardinality();
  return count;
}

// All size-`size` subsets of `pool` in lexicographic order of positions.
inline std::vector<std::vector<int>> Combinations(const std::vector<int>& pool,
                                                  int size) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(pool.size());
  if (size > n || size < 0) return out;
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    std::vector<int> pick;
    for (int i : idx) pick.push_back(pool[i]);
    out.push_back(std::move(pick));
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int t = i + 1; t < size; ++t) idx[t] = idx[t - 1] + 1;
  }
  return out;
}

}  // namespace missdp::internal

#endif  // MISSDP_SYNTH_TABLE_UTIL_H_
