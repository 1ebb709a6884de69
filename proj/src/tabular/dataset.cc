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

#include "missdp/tabular/dataset.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace missdp {

absl::StatusOr<Dataset> Dataset::Create(Schema schema, int64_t rows,
                                        std::vector<double> values) {
  const int k = schema.size();
  if (rows < 0) return absl::InvalidArgumentError("negative row count");
  if (values.size() != static_cast<size_t>(rows) * k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", rows * k, " cells, got ", values.size()));
  }
  Dataset d;
  d.schema_ = std::move(schema);
  d.rows_ = rows;
  d.codes_.assign(values.size(), 0);
  d.mask_.assign(values.size(), 0);
  for (int j = 0; j < k; ++j) {
    const AttributeSpec& a = d.schema_.attribute(j);
    for (int64_t i = 0; i < rows; ++i) {
      const size_t o = d.Offset(i, j);
      const double v = values[o];
      if (std::isnan(v)) {
        d.mask_[o] = 1;
        continue;
      }
      if (a.is_categorical()) {
        if (v != std::floor(v) || v < 0 || v >= a.cardinality()) {
          return absl::InvalidArgumentError(absl::StrCat(
              "row ", i, ", column '", a.name(), "': category index ", v,
              " outside the domain"));
        }
      } else if (v < a.range().min || v > a.range().max) {
        return absl::InvalidArgumentError(absl::StrCat(
            "row ", i, ", column '", a.name(), "': value ", v, " outside [",
            a.range().min, ", ", a.range().max, "]"));
      }
      d.codes_[o] = a.CodeOf(v);
    }
  }
  d.values_ = std::move(values);
  return d;
}

absl::StatusOr<Dataset> Dataset::FromCodes(const Schema& schema, int64_t rows,
                                           std::span<const int32_t> codes) {
  const int k = schema.size();
  if (codes.size() != static_cast<size_t>(rows) * k) {
    return absl::InvalidArgumentError("code matrix has the wrong shape");
  }
  std::vector<double> values(codes.size());
  for (int j = 0; j < k; ++j) {
    const AttributeSpec& a = schema.attribute(j);
    for (int64_t i = 0; i < rows; ++i) {
      const size_t o = static_cast<size_t>(j) * rows + i;
      if (codes[o] < 0 || codes[o] >= a.cardinality()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "code ", codes[o], " out of range for '", a.name(), "'"));
      }
      values[o] = a.ValueOfCode(codes[o]);
    }
  }
  return Create(schema, rows, std::move(values));
}

int64_t Dataset::MissingCount(int j) const {
  int64_t c = 0;
  for (uint8_t m : mask(j)) c += m;
  return c;
}

int64_t Dataset::TotalMissing() const {
  int64_t c = 0;
  for (uint8_t m : mask_) c += m;
  return c;
}

Dataset Dataset::SelectRows(std::span<const int64_t> rows) const {
  Dataset d;
  d.schema_ = schema_;
  d.rows_ = static_cast<int64_t>(rows.size());
  const size_t n = rows.size();
  d.values_.resize(n * cols());
  d.codes_.resize(n * cols());
  d.mask_.resize(n * cols());
  for (int j = 0; j < cols(); ++j) {
    for (size_t r = 0; r < n; ++r) {
      const size_t src = Offset(rows[r], j);
      const size_t dst = static_cast<size_t>(j) * n + r;
      d.values_[dst] = values_[src];
      d.codes_[dst] = codes_[src];
      d.mask_[dst] = mask_[src];
    }
  }
  return d;
}

Dataset Dataset::WithAdditionalMissing(std::span<const uint8_t> mask) const {
  Dataset d = *this;
  for (size_t o = 0; o < d.mask_.size() && o < mask.size(); ++o) {
    if (mask[o] && !d.mask_[o]) {
      d.mask_[o] = 1;
      d.values_[o] = kMissingValue;
      d.codes_[o] = 0;
    }
  }
  return d;
}

absl::StatusOr<Dataset> Dataset::WithValue(int64_t i, int j, double v) const {
  std::vector<double> values = values_;
  values[Offset(i, j)] = v;
  return Create(schema_, rows_, std::move(values));
}

bool operator==(const Dataset& a, const Dataset& b) {
  if (!(a.schema_ == b.schema_) || a.rows_ != b.rows_ || a.mask_ != b.mask_) {
    return false;
  }
  for (size_t o = 0; o < a.values_.size(); ++o) {
    if (a.mask_[o]) continue;
    if (a.values_[o] != b.values_[o]) return false;
  }
  return true;
}

}  // namespace missdp
