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

#include "missdp/tabular/schema.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace missdp {

absl::StatusOr<AttributeSpec> AttributeSpec::Categorical(
    std::string name, std::vector<std::string> labels) {
  if (labels.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("categorical attribute '", name, "' has an empty domain"));
  }
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "categorical attribute '", name, "' repeats label '", l, "'"));
    }
  }
  return AttributeSpec(std::move(name), CategoricalDomain{std::move(labels)});
}

absl::StatusOr<AttributeSpec> AttributeSpec::Numerical(std::string name,
                                                       double min, double max,
                                                       int bins) {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "numerical attribute '", name, "' needs finite min < max"));
  }
  if (bins < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("numerical attribute '", name, "' needs bins >= 1"));
  }
  return AttributeSpec(std::move(name), NumericalRange{min, max, bins});
}

int AttributeSpec::cardinality() const {
  if (is_categorical()) return static_cast<int>(labels().size());
  return range().bins;
}

int AttributeSpec::BinOf(double v) const {
  const NumericalRange& r = range();
  const double width = (r.max - r.min) / r.bins;
  const double raw = std::floor((v - r.min) / width);
  if (raw < 0) return 0;
  return static_cast<int>(std::min<double>(raw, r.bins - 1));
}

double AttributeSpec::BinMidpoint(int bin) const {
  const NumericalRange& r = range();
  const double width = (r.max - r.min) / r.bins;
  return r.min + (bin + 0.5) * width;
}

std::optional<int> AttributeSpec::LabelIndex(std::string_view label) const {
  const auto& ls = labels();
  auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) return std::nullopt;
  return static_cast<int>(it - ls.begin());
}

int AttributeSpec::CodeOf(double value) const {
  if (is_categorical()) return static_cast<int>(value);
  return BinOf(value);
}

double AttributeSpec::ValueOfCode(int code) const {
  if (is_categorical()) return code;
  return BinMidpoint(code);
}

bool operator==(const NumericalRange& a, const NumericalRange& b) {
  return a.min == b.min && a.max == b.max && a.bins == b.bins;
}

bool operator==(const CategoricalDomain& a, const CategoricalDomain& b) {
  return a.labels == b.labels;
}

bool operator==(const AttributeSpec& a, const AttributeSpec& b) {
  return a.name_ == b.name_ && a.kind_ == b.kind_;
}

absl::StatusOr<Schema> Schema::Create(std::vector<AttributeSpec> attributes) {
  std::set<std::string> names;
  for (const auto& a : attributes) {
    if (!names.insert(a.name()).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate attribute name '", a.name(), "'"));
    }
  }
  return Schema(std::move(attributes));
}

absl::StatusOr<Schema> Schema::FromJson(const nlohmann::json& j) {
  const nlohmann::json* list = &j;
  if (j.is_object()) {
    if (!j.contains("attributes")) {
      return absl::InvalidArgumentError("schema object lacks 'attributes'");
    }
    list = &j.at("attributes");
  }
  if (!list->is_array()) {
    return absl::InvalidArgumentError("schema attributes must be an array");
  }
  std::vector<AttributeSpec> attrs;
  try {
    for (const auto& a : *list) {
      const std::string name = a.at("name").get<std::string>();
      const std::string kind = a.at("kind").get<std::string>();
      if (kind == "categorical") {
        auto spec = AttributeSpec::Categorical(
            name, a.at("domain").get<std::vector<std::string>>());
        if (!spec.ok()) return spec.status();
        attrs.push_back(*std::move(spec));
      } else if (kind == "numerical") {
        double lo, hi;
        if (a.contains("range")) {
          lo = a.at("range").at(0).get<double>();
          hi = a.at("range").at(1).get<double>();
        } else {
          lo = a.at("min").get<double>();
          hi = a.at("max").get<double>();
        }
        const int bins = a.value("bins", kDefaultNumericalBins);
        auto spec = AttributeSpec::Numerical(name, lo, hi, bins);
        if (!spec.ok()) return spec.status();
        attrs.push_back(*std::move(spec));
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("attribute '", name, "' has unknown kind '", kind, "'"));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed schema: ", e.what()));
  }
  return Create(std::move(attrs));
}

absl::StatusOr<Schema> Schema::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open schema ", path));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("schema ", path, " is not valid JSON: ", e.what()));
  }
  return FromJson(j);
}

nlohmann::json Schema::ToJson() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& a : attributes_) {
    if (a.is_categorical()) {
      list.push_back({{"name", a.name()},
                      {"kind", "categorical"},
                      {"domain", a.labels()}});
    } else {
      list.push_back({{"name", a.name()},
                      {"kind", "numerical"},
                      {"min", a.range().min},
                      {"max", a.range().max},
                      {"bins", a.range().bins}});
    }
  }
  return {{"attributes", list}};
}

std::optional<int> Schema::IndexOf(std::string_view name) const {
  for (int j = 0; j < size(); ++j) {
    if (attributes_[j].name() == name) return j;
  }
  return std::nullopt;
}

std::vector<int> Schema::Cardinalities() const {
  std::vector<int> out;
  out.reserve(attributes_.size());
  for (const auto& a : attributes_) out.push_back(a.cardinality());
  return out;
}

}  // namespace missdp
