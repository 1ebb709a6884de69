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

#ifndef MISSDP_TABULAR_DATASET_H_
#define MISSDP_TABULAR_DATASET_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "missdp/tabular/schema.h"

namespace missdp {

// Sentinel stored in a missing cell.
inline constexpr double kMissingValue = std::numeric_limits<double>::quiet_NaN();

// An n x k table with a missing-indicator mask. Storage is column-major: each
// attribute owns a contiguous column of raw values, of discrete codes and of
// mask bytes. Instances are immutable; transformations return new datasets.
//
// A cell is missing exactly when its mask byte is 1, and a missing cell holds
// kMissingValue. Present categorical cells hold the label index as a double;
// present numerical cells hold their raw value.
class Dataset {
 public:
  Dataset() = default;

  // `values` is column-major with rows * schema.size() entries; NaN marks a
  // missing cell. Rejects out-of-domain values.
  static absl::StatusOr<Dataset> Create(Schema schema, int64_t rows,
                                        std::vector<double> values);

  // Builds a mask-free dataset from column-major discrete codes. Numerical
  // cells take the midpoint of their bin.
  static absl::StatusOr<Dataset> FromCodes(const Schema& schema, int64_t rows,
                                           std::span<const int32_t> codes);

  const Schema& schema() const { return schema_; }
  int64_t rows() const { return rows_; }
  int cols() const { return schema_.size(); }

  double value(int64_t i, int j) const { return values_[Offset(i, j)]; }
  bool is_missing(int64_t i, int j) const { return mask_[Offset(i, j)] != 0; }
  // Discrete code of a present cell; 0 for missing cells (check the mask).
  int32_t code(int64_t i, int j) const { return codes_[Offset(i, j)]; }

  std::span<const double> column(int j) const {
    return {values_.data() + Offset(0, j), static_cast<size_t>(rows_)};
  }
  std::span<const int32_t> codes(int j) const {
    return {codes_.data() + Offset(0, j), static_cast<size_t>(rows_)};
  }
  std::span<const uint8_t> mask(int j) const {
    return {mask_.data() + Offset(0, j), static_cast<size_t>(rows_)};
  }
  const std::vector<uint8_t>& mask_matrix() const { return mask_; }

  int64_t MissingCount(int j) const;
  int64_t TotalMissing() const;
  bool HasMissing() const { return TotalMissing() > 0; }

  // Rows in the given order (indices may repeat).
  Dataset SelectRows(std::span<const int64_t> rows) const;

  // Marks additional cells missing. `mask` is column-major; already-missing
  // cells stay missing and present values are left untouched.
  Dataset WithAdditionalMissing(std::span<const uint8_t> mask) const;

  // Replaces cell (i, j) and returns the new dataset. NaN clears the cell.
  absl::StatusOr<Dataset> WithValue(int64_t i, int j, double v) const;

  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  size_t Offset(int64_t i, int j) const {
    return static_cast<size_t>(j) * static_cast<size_t>(rows_) +
           static_cast<size_t>(i);
  }

  Schema schema_;
  int64_t rows_ = 0;
  std::vector<double> values_;
  std::vector<int32_t> codes_;
  std::vector<uint8_t> mask_;
};

}  // namespace missdp

#endif  // MISSDP_TABULAR_DATASET_H_
