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

#ifndef MISSDP_TABULAR_SCHEMA_H_
#define MISSDP_TABULAR_SCHEMA_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace missdp {

inline constexpr int kDefaultNumericalBins = 10;

struct CategoricalDomain {
  std::vector<std::string> labels;
};

// Numerical attributes keep their raw value; counting and modelling use the
// index of one of `bins` uniform bins over [min, max].
struct NumericalRange {
  double min = 0.0;
  double max = 1.0;
  int bins = kDefaultNumericalBins;
};

class AttributeSpec {
 public:
  static absl::StatusOr<AttributeSpec> Categorical(
      std::string name, std::vector<std::string> labels);
  static absl::StatusOr<AttributeSpec> Numerical(
      std::string name, double min, double max,
      int bins = kDefaultNumericalBins);

  const std::string& name() const { return name_; }
  bool is_categorical() const {
    return std::holds_alternative<CategoricalDomain>(kind_);
  }
  // Requires is_categorical().
  const std::vector<std::string>& labels() const {
    return std::get<CategoricalDomain>(kind_).labels;
  }
  // Requires !is_categorical().
  const NumericalRange& range() const {
    return std::get<NumericalRange>(kind_);
  }

  // Number of discrete codes: domain size or bin count.
  int cardinality() const;

  // min(floor((v - min) / width), bins - 1); `max` lands in the last bin.
  int BinOf(double v) const;
  double BinMidpoint(int bin) const;
  std::optional<int> LabelIndex(std::string_view label) const;

  // Discrete code of a present value (category index or bin index).
  int CodeOf(double value) const;
  // Representative value for a code: the category index itself, or the bin
  // midpoint for numerical attributes.
  double ValueOfCode(int code) const;

  friend bool operator==(const AttributeSpec& a, const AttributeSpec& b);

 private:
  AttributeSpec(std::string name,
                std::variant<CategoricalDomain, NumericalRange> kind)
      : name_(std::move(name)), kind_(std::move(kind)) {}

  std::string name_;
  std::variant<CategoricalDomain, NumericalRange> kind_;
};

bool operator==(const NumericalRange& a, const NumericalRange& b);
bool operator==(const CategoricalDomain& a, const CategoricalDomain& b);

// Ordered attribute list. Attribute j is addressed by its position.
class Schema {
 public:
  Schema() = default;
  static absl::StatusOr<Schema> Create(std::vector<AttributeSpec> attributes);

  // {"attributes": [{"name": ..., "kind": "categorical", "domain": [...]},
  //                 {"name": ..., "kind": "numerical", "min": .., "max": ..,
  //                  "bins": ..}]}
  // A bare top-level array of attribute objects is accepted too.
  static absl::StatusOr<Schema> FromJson(const nlohmann::json& j);
  static absl::StatusOr<Schema> Load(const std::string& path);
  nlohmann::json ToJson() const;

  int size() const { return static_cast<int>(attributes_.size()); }
  const AttributeSpec& attribute(int j) const { return attributes_[j]; }
  const std::vector<AttributeSpec>& attributes() const { return attributes_; }
  std::optional<int> IndexOf(std::string_view name) const;
  std::vector<int> Cardinalities() const;

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.attributes_ == b.attributes_;
  }

 private:
  explicit Schema(std::vector<AttributeSpec> attributes)
      : attributes_(std::move(attributes)) {}

  std::vector<AttributeSpec> attributes_;
};

}  // namespace missdp

#endif  // MISSDP_TABULAR_SCHEMA_H_
