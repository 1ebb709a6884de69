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

#ifndef MISSDP_DPCORE_BUDGET_LEDGER_H_
#define MISSDP_DPCORE_BUDGET_LEDGER_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace missdp {

// Records (epsilon, delta) consumptions against a total budget under
// sequential composition. Spending past the budget is refused.
class BudgetLedger {
 public:
  struct Entry {
    std::string label;
    double epsilon = 0.0;
    double delta = 0.0;
  };

  static absl::StatusOr<BudgetLedger> Create(double epsilon, double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  const std::vector<Entry>& entries() const { return entries_; }

  double SpentEpsilon() const;
  double SpentDelta() const;
  double RemainingEpsilon() const;
  double RemainingDelta() const;

  absl::Status Spend(std::string label, double epsilon, double delta = 0.0);

  // Sum of epsilons over entries whose label starts with `prefix`.
  double SpentEpsilonWithPrefix(const std::string& prefix) const;

  // Σε_i <= ε and Σδ_i <= δ (with 1e-9 relative slack for rounding).
  bool WithinBudget() const;

  // Numbers with 17 significant digits; infinity as the string "inf".
  nlohmann::json ToJson() const;
  static absl::StatusOr<BudgetLedger> FromJson(const nlohmann::json& j);

 private:
  BudgetLedger(double epsilon, double delta) : epsilon_(epsilon), delta_(delta) {}

  double epsilon_;
  double delta_;
  std::vector<Entry> entries_;
};

// JSON helpers shared with the report writers.
nlohmann::json EpsilonToJson(double epsilon);
absl::StatusOr<double> EpsilonFromJson(const nlohmann::json& j);

}  // namespace missdp

#endif  // MISSDP_DPCORE_BUDGET_LEDGER_H_
