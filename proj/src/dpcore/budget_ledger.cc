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

#include "missdp/dpcore/budget_ledger.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "missdp/dpcore/mechanisms.h"

namespace missdp {
namespace {

constexpr double kSlack = 1e-9;

bool LessOrClose(double spent, double budget) {
  if (IsInfinite(budget)) return true;
  return spent <= budget * (1.0 + kSlack) + 1e-15;
}

}  // namespace

absl::StatusOr<BudgetLedger> BudgetLedger::Create(double epsilon, double delta) {
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError("epsilon must be non-negative");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in [0, 1)");
  }
  return BudgetLedger(epsilon, delta);
}

double BudgetLedger::SpentEpsilon() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.epsilon;
  return s;
}

double BudgetLedger::SpentDelta() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.delta;
  return s;
}

double BudgetLedger::RemainingEpsilon() const {
  if (IsInfinite(epsilon_)) return kInfiniteEpsilon;
  return std::max(0.0, epsilon_ - SpentEpsilon());
}

double BudgetLedger::RemainingDelta() const {
  return std::max(0.0, delta_ - SpentDelta());
}

absl::Status BudgetLedger::Spend(std::string label, double epsilon,
                                 double delta) {
  if (!(epsilon >= 0.0) || !(delta >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("negative consumption for '", label, "'"));
  }
  if (IsInfinite(epsilon) && !IsInfinite(epsilon_)) {
    return absl::FailedPreconditionError(
        absl::StrCat("'", label, "' requests an unbounded epsilon"));
  }
  if (!IsInfinite(epsilon_) && !LessOrClose(SpentEpsilon() + epsilon, epsilon_)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "'", label, "' would exceed epsilon budget ", epsilon_));
  }
  if (!LessOrClose(SpentDelta() + delta, delta_)) {
    return absl::FailedPreconditionError(
        absl::StrCat("'", label, "' would exceed delta budget ", delta_));
  }
  entries_.push_back({std::move(label), epsilon, delta});
  return absl::OkStatus();
}

double BudgetLedger::SpentEpsilonWithPrefix(const std::string& prefix) const {
  double s = 0.0;
  for (const auto& e : entries_) {
    if (e.label.rfind(prefix, 0) == 0) s += e.epsilon;
  }
  return s;
}

bool BudgetLedger::WithinBudget() const {
  if (!IsInfinite(epsilon_) && !LessOrClose(SpentEpsilon(), epsilon_)) {
    return false;
  }
  return LessOrClose(SpentDelta(), delta_);
}

nlohmann::json EpsilonToJson(double epsilon) {
  if (IsInfinite(epsilon)) return "inf";
  return epsilon;
}

absl::StatusOr<double> EpsilonFromJson(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfiniteEpsilon;
    return absl::InvalidArgumentError("epsilon string must be 'inf'");
  }
  if (!j.is_number()) return absl::InvalidArgumentError("epsilon must be a number");
  return j.get<double>();
}

nlohmann::json BudgetLedger::ToJson() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : entries_) {
    entries.push_back({{"label", e.label},
                       {"epsilon", EpsilonToJson(e.epsilon)},
                       {"delta", e.delta}});
  }
  return {{"epsilon", EpsilonToJson(epsilon_)},
          {"delta", delta_},
          {"spent_epsilon", EpsilonToJson(SpentEpsilon())},
          {"spent_delta", SpentDelta()},
          {"within_budget", WithinBudget()},
          {"entries", entries}};
}

absl::StatusOr<BudgetLedger> BudgetLedger::FromJson(const nlohmann::json& j) {
  try {
    auto eps = EpsilonFromJson(j.at("epsilon"));
    if (!eps.ok()) return eps.status();
    auto ledger = Create(*eps, j.at("delta").get<double>());
    if (!ledger.ok()) return ledger.status();
    for (const auto& e : j.at("entries")) {
      auto ee = EpsilonFromJson(e.at("epsilon"));
      if (!ee.ok()) return ee.status();
      ledger->entries_.push_back(
          {e.at("label").get<std::string>(), *ee, e.at("delta").get<double>()});
    }
    return ledger;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed ledger: ", e.what()));
  }
}

}  // namespace missdp
