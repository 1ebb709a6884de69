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

// Helpers for building small datasets in tests.

#ifndef MISSDP_TESTS_TEST_UTIL_H_
#define MISSDP_TESTS_TEST_UTIL_H_

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "missdp/dpcore/random.h"
#include "missdp/tabular/dataset.h"
#include "missdp/tabular/schema.h"

namespace missdp {
namespace testing_util {

inline const double kNA = kMissingValue;

// Schema of categorical attributes named a0, a1, ... with the given sizes.
inline Schema CategoricalSchema(const std::vector<int>& cardinalities) {
  std::vector<AttributeSpec> attrs;
  for (size_t j = 0; j < cardinalities.size(); ++j) {
    std::vector<std::string> labels;
    for (int c = 0; c < cardinalities[j]; ++c) labels.push_back("v" + std::to_string(c));
    attrs.push_back(*AttributeSpec::Categorical("a" + std::to_string(j), labels));
  }
  return *Schema::Create(std::move(attrs));
}

// Row-major literal to dataset; kNA marks a missing cell.
inline Dataset FromRows(const Schema& schema,
                        const std::vector<std::vector<double>>& rows) {
  const size_t n = rows.size();
  const size_t k = schema.size();
  std::vector<double> values(n * k);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) values[j * n + i] = rows[i][j];
  }
  auto d = Dataset::Create(schema, static_cast<int64_t>(n), std::move(values));
  EXPECT_TRUE(d.ok()) << d.status();
  return *d;
}

// Independent uniform categorical columns, optionally with i.i.d. missing
// cells at `missing_rate`.
inline Dataset RandomCategorical(const Schema& schema, int64_t n, uint64_t seed,
                                 double missing_rate = 0.0) {
  Rng rng = MakeRng(seed);
  std::vector<double> values(static_cast<size_t>(n) * schema.size());
  for (int j = 0; j < schema.size(); ++j) {
    for (int64_t i = 0; i < n; ++i) {
      double v = static_cast<double>(
          UniformIndex(rng, schema.attribute(j).cardinality()));
      if (missing_rate > 0 && UniformUnit(rng) < missing_rate) v = kNA;
      values[static_cast<size_t>(j) * n + i] = v;
    }
  }
  return *Dataset::Create(schema, n, std::move(values));
}

}  // namespace testing_util
}  // namespace missdp

#endif  // MISSDP_TESTS_TEST_UTIL_H_
