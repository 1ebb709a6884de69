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

#ifndef MISSDP_TABULAR_CSV_H_
#define MISSDP_TABULAR_CSV_H_

#include <istream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "missdp/tabular/dataset.h"

namespace missdp {

struct CsvOptions {
  // Besides empty fields, cells equal to this token are treated as missing.
  std::string missing_token = "?";
};

// Comma-separated with a header row that must list the schema's attribute
// names in order. Quoting is not supported.
absl::StatusOr<Dataset> ParseCsv(std::istream& in, const Schema& schema,
                                 const CsvOptions& options = {});
absl::StatusOr<Dataset> LoadCsv(const std::string& path, const Schema& schema,
                                const CsvOptions& options = {});

// Missing cells are written as the missing token; numbers with 17
// significant digits.
std::string ToCsv(const Dataset& d, const CsvOptions& options = {});
absl::Status WriteCsv(const Dataset& d, const std::string& path,
                      const CsvOptions& options = {});

// Mask sidecar: header plus one 0/1 row per data row.
std::string MaskToCsv(const Dataset& d);
absl::Status WriteMaskCsv(const Dataset& d, const std::string& path);

struct MaskTable {
  std::vector<std::string> names;
  int64_t rows = 0;
  std::vector<uint8_t> mask;  // column-major
};
absl::StatusOr<MaskTable> LoadMaskCsv(const std::string& path);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, const std::string& contents);

}  // namespace missdp

#endif  // MISSDP_TABULAR_CSV_H_
