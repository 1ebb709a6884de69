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

#include <cmath>
#include <set>

#include "absl/strings/str_cat.h"
#include "missdp/synth/model.h"
#include "missdp/tabular/csv.h"

namespace missdp {
namespace {

constexpr double kSumTolerance = 1e-9;

int64_t TableSize(const Schema& s, int attr, const std::vector<int>& parents) {
  int64_t size = s.attribute(attr).cardinality();
  for (int p : parents) size *= s.attribute(p).cardinality();
  return size;
}

absl::Status CheckDistribution(std::span<const double> p,
                               const std::string& what) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(what, " has a negative entry"));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat(what, " sums to ", sum, ", not 1"));
  }
  return absl::OkStatus();
}

absl::Status CheckParents(const Schema& s, const std::vector<int>& parents,
                          const std::set<int>& placed, int cap,
                          const std::string& what) {
  if (static_cast<int>(parents.size()) > cap) {
    return absl::InvalidArgumentError(absl::StrCat(what, " has too many parents"));
  }
  std::set<int> seen;
  for (int p : parents) {
    if (p < 0 || p >= s.size() || !placed.count(p) || !seen.insert(p).second) {
      return absl::InvalidArgumentError(
          absl::StrCat(what, " has an invalid parent ", p));
    }
  }
  return absl::OkStatus();
}

nlohmann::json SchemaJson(const Schema& s) { return s.ToJson(); }

}  // namespace

absl::Status ValidateModel(const BayesModel& m) {
  const Schema& s = m.schema;
  if (m.degree < 1) return absl::InvalidArgumentError("degree must be >= 1");
  if (static_cast<int>(m.network.size()) != s.size()) {
    return absl::InvalidArgumentError("network must place every attribute once");
  }
  std::set<int> placed;
  for (size_t i = 0; i < m.network.size(); ++i) {
    const BayesEntry& e = m.network[i];
    if (e.attr < 0 || e.attr >= s.size() || placed.count(e.attr)) {
      return absl::InvalidArgumentError(
          absl::StrCat("network entry ", i, " has invalid attribute ", e.attr));
    }
    if (i == 0 && !e.parents.empty()) {
      return absl::InvalidArgumentError("first network entry must have no parents");
    }
    const std::string what = absl::StrCat("table of ", s.attribute(e.attr).name());
    if (auto st = CheckParents(s, e.parents, placed, m.degree, what); !st.ok()) {
      return st;
    }
    if (static_cast<int64_t>(e.table.size()) != TableSize(s, e.attr, e.parents)) {
      return absl::InvalidArgumentError(absl::StrCat(what, " has the wrong size"));
    }
    if (auto st = CheckDistribution(e.table, what); !st.ok()) return st;
    placed.insert(e.attr);
  }
  return absl::OkStatus();
}

absl::Status ValidateModel(const ColumnModel& m) {
  const Schema& s = m.schema;
  const int k = s.size();
  if (m.parent_cap < 1) return absl::InvalidArgumentError("parent cap must be >= 1");
  if (static_cast<int>(m.sequence.size()) != k || k == 0) {
    return absl::InvalidArgumentError("sequence must be a permutation of the attributes");
  }
  std::set<int> placed;
  for (int a : m.sequence) {
    if (a < 0 || a >= k || !placed.insert(a).second) {
      return absl::InvalidArgumentError("sequence must be a permutation of the attributes");
    }
  }
  if (static_cast<int>(m.first_hist.size()) !=
      s.attribute(m.sequence[0]).cardinality()) {
    return absl::InvalidArgumentError("first histogram has the wrong size");
  }
  if (auto st = CheckDistribution(m.first_hist, "first histogram"); !st.ok()) {
    return st;
  }
  if (static_cast<int>(m.predictors.size()) != k - 1) {
    return absl::InvalidArgumentError("need one predictor per later attribute");
  }
  placed = {m.sequence[0]};
  for (int i = 1; i < k; ++i) {
    const Predictor& p = m.predictors[i - 1];
    if (p.target != m.sequence[i]) {
      return absl::InvalidArgumentError(
          absl::StrCat("predictor ", i, " does not follow the sequence"));
    }
    const std::string what = absl::StrCat("predictor of ", s.attribute(p.target).name());
    if (auto st = CheckParents(s, p.parents, placed, m.parent_cap, what); !st.ok()) {
      return st;
    }
    if (static_cast<int64_t>(p.table.size()) != TableSize(s, p.target, p.parents)) {
      return absl::InvalidArgumentError(absl::StrCat(what, " has the wrong size"));
    }
    const size_t card = s.attribute(p.target).cardinality();
    for (size_t row = 0; row < p.table.size(); row += card) {
      if (auto st = CheckDistribution(
              std::span<const double>(p.table).subspan(row, card), what);
          !st.ok()) {
        return st;
      }
    }
    placed.insert(p.target);
  }
  return absl::OkStatus();
}

absl::Status ValidateModel(const SynthModel& m) {
  return std::visit([](const auto& x) { return ValidateModel(x); }, m);
}

absl::StatusOr<Dataset> Generate(const SynthModel& m, int64_t n_out, Rng& rng) {
  if (const auto* b = std::get_if<BayesModel>(&m)) {
    return GenerateBayes(*b, n_out, rng);
  }
  return GenerateColumnwise(std::get<ColumnModel>(m), n_out, rng);
}

nlohmann::json ModelToJson(const SynthModel& m) {
  nlohmann::json j;
  if (const auto* b = std::get_if<BayesModel>(&m)) {
    j["kind"] = "bayes";
    j["schema"] = SchemaJson(b->schema);
    j["degree"] = b->degree;
    j["network"] = nlohmann::json::array();
    for (const BayesEntry& e : b->network) {
      j["network"].push_back({{"attr", e.attr},
                              {"parents", e.parents},
                              {"observed_rows", e.observed_rows},
                              {"table", e.table}});
    }
    return j;
  }
  const ColumnModel& c = std::get<ColumnModel>(m);
  j["kind"] = "columnwise";
  j["schema"] = SchemaJson(c.schema);
  j["parent_cap"] = c.parent_cap;
  j["sequence"] = c.sequence;
  j["first_hist"] = c.first_hist;
  j["first_observed"] = c.first_observed;
  j["predictors"] = nlohmann::json::array();
  for (const Predictor& p : c.predictors) {
    j["predictors"].push_back({{"target", p.target},
                               {"parents", p.parents},
                               {"observed_rows", p.observed_rows},
                               {"table", p.table}});
  }
  return j;
}

absl::StatusOr<SynthModel> ModelFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("schema")) {
    return absl::InvalidArgumentError("model needs \"kind\" and \"schema\"");
  }
  auto schema = Schema::FromJson(j["schema"]);
  if (!schema.ok()) return schema.status();
  SynthModel out;
  try {
    const std::string kind = j["kind"];
    if (kind == "bayes") {
      BayesModel b;
      b.schema = *schema;
      b.degree = j.at("degree").get<int>();
      for (const auto& e : j.at("network")) {
        b.network.push_back({e.at("attr").get<int>(),
                             e.at("parents").get<std::vector<int>>(),
                             e.at("table").get<std::vector<double>>(),
                             e.value("observed_rows", int64_t{0})});
      }
      out = std::move(b);
    } else if (kind == "columnwise") {
      ColumnModel c;
      c.schema = *schema;
      c.parent_cap = j.at("parent_cap").get<int>();
      c.sequence = j.at("sequence").get<std::vector<int>>();
      c.first_hist = j.at("first_hist").get<std::vector<double>>();
      c.first_observed = j.value("first_observed", int64_t{0});
      for (const auto& p : j.at("predictors")) {
        c.predictors.push_back({p.at("target").get<int>(),
                                p.at("parents").get<std::vector<int>>(),
                                p.at("table").get<std::vector<double>>(),
                                p.value("observed_rows", int64_t{0})});
      }
      out = std::move(c);
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown model kind \"", kind, "\""));
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed model: ", e.what()));
  }
  if (auto s = ValidateModel(out); !s.ok()) return s;
  return out;
}

absl::Status SaveModel(const SynthModel& m, const std::string& path) {
  return WriteFile(path, ModelToJson(m).dump(1) + "\n");
}

absl::StatusOr<SynthModel> LoadModel(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  nlohmann::json j = nlohmann::json::parse(*text, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": not valid JSON"));
  }
  return ModelFromJson(j);
}

}  // namespace missdp
