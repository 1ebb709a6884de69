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

#include "missdp/tabular/csv.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace missdp {
namespace {

std::vector<std::string> SplitLine(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return absl::StrSplit(line, ',');
}

std::string FormatNumber(double v) { return absl::StrFormat("%.17g", v); }

}  // namespace

absl::StatusOr<Dataset> ParseCsv(std::istream& in, const Schema& schema,
                                 const CsvOptions& options) {
  std::string line;
  if (!std::getline(in, line)) {
    return absl::InvalidArgumentError("CSV input is empty");
  }
  const std::vector<std::string> header = SplitLine(line);
  const int k = schema.size();
  if (static_cast<int>(header.size()) != k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "CSV header has ", header.size(), " columns, schema has ", k));
  }
  for (int j = 0; j < k; ++j) {
    if (absl::StripAsciiWhitespace(header[j]) != schema.attribute(j).name()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "CSV header column ", j, " is '", header[j], "', schema expects '",
          schema.attribute(j).name(), "'"));
    }
  }
  std::vector<std::vector<double>> columns(k);
  int64_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = SplitLine(line);
    if (static_cast<int>(fields.size()) != k) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", row, " has ", fields.size(), " fields, expected ", k));
    }
    for (int j = 0; j < k; ++j) {
      const absl::string_view field = absl::StripAsciiWhitespace(fields[j]);
      if (field.empty() || field == options.missing_token) {
        columns[j].push_back(kMissingValue);
        continue;
      }
      const AttributeSpec& a = schema.attribute(j);
      if (a.is_categorical()) {
        auto idx = a.LabelIndex(std::string_view(field.data(), field.size()));
        if (!idx) {
          return absl::InvalidArgumentError(
              absl::StrCat("row ", row, ", column '", a.name(),
                           "': unknown label '", field, "'"));
        }
        columns[j].push_back(*idx);
      } else {
        double v;
        if (!absl::SimpleAtod(field, &v) || !std::isfinite(v)) {
          return absl::InvalidArgumentError(
              absl::StrCat("row ", row, ", column '", a.name(),
                           "': '", field, "' is not a number"));
        }
        columns[j].push_back(v);
      }
    }
    ++row;
  }
  std::vector<double> values;
  values.reserve(static_cast<size_t>(row) * k);
  for (auto& c : columns) values.insert(values.end(), c.begin(), c.end());
  return Dataset::Create(schema, row, std::move(values));
}

absl::StatusOr<Dataset> LoadCsv(const std::string& path, const Schema& schema,
                                const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return ParseCsv(in, schema, options);
}

std::string ToCsv(const Dataset& d, const CsvOptions& options) {
  std::string out;
  std::vector<std::string> names;
  for (const auto& a : d.schema().attributes()) names.push_back(a.name());
  absl::StrAppend(&out, absl::StrJoin(names, ","), "\n");
  std::vector<std::string> fields(d.cols());
  for (int64_t i = 0; i < d.rows(); ++i) {
    for (int j = 0; j < d.cols(); ++j) {
      const AttributeSpec& a = d.schema().attribute(j);
      if (d.is_missing(i, j)) {
        fields[j] = options.missing_token;
      } else if (a.is_categorical()) {
        fields[j] = a.labels()[d.code(i, j)];
      } else {
        fields[j] = FormatNumber(d.value(i, j));
      }
    }
    absl::StrAppend(&out, absl::StrJoin(fields, ","), "\n");
  }
  return out;
}

absl::Status WriteCsv(const Dataset& d, const std::string& path,
                      const CsvOptions& options) {
  return WriteFile(path, ToCsv(d, options));
}

std::string MaskToCsv(const Dataset& d) {
  std::string out;
  std::vector<std::string> names;
  for (const auto& a : d.schema().attributes()) names.push_back(a.name());
  absl::StrAppend(&out, absl::StrJoin(names, ","), "\n");
  for (int64_t i = 0; i < d.rows(); ++i) {
    for (int j = 0; j < d.cols(); ++j) {
      if (j > 0) out.push_back(',');
      out.push_back(d.is_missing(i, j) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

absl::Status WriteMaskCsv(const Dataset& d, const std::string& path) {
  return WriteFile(path, MaskToCsv(d));
}

absl::StatusOr<MaskTable> LoadMaskCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::string line;
  if (!std::getline(in, line)) {
    return absl::InvalidArgumentError("mask file is empty");
  }
  MaskTable t;
  for (auto& n : SplitLine(line)) {
    t.names.emplace_back(absl::StripAsciiWhitespace(n));
  }
  const size_t k = t.names.size();
  std::vector<std::vector<uint8_t>> cols(k);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = SplitLine(line);
    if (fields.size() != k) {
      return absl::InvalidArgumentError(
          absl::StrCat("mask row ", t.rows, " has ", fields.size(),
                       " fields, expected ", k));
    }
    for (size_t j = 0; j < k; ++j) {
      const absl::string_view f = absl::StripAsciiWhitespace(fields[j]);
      if (f != "0" && f != "1") {
        return absl::InvalidArgumentError(absl::StrCat(
            "mask row ", t.rows, " column ", j, ": expected 0 or 1"));
      }
      cols[j].push_back(f == "1");
    }
    ++t.rows;
  }
  for (auto& c : cols) t.mask.insert(t.mask.end(), c.begin(), c.end());
  return t;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << contents;
  if (!out) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

}  // namespace missdp
