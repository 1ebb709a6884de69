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

#include <gtest/gtest.h>

#include "missdp/dpcore/mechanisms.h"

namespace missdp {
namespace {

TEST(BudgetLedgerTest, SequentialCompositionIsEnforced) {
  auto ledger = BudgetLedger::Create(1.0, 1e-6);
  ASSERT_TRUE(ledger.ok());
  EXPECT_TRUE(ledger->Spend("structure", 0.5).ok());
  EXPECT_TRUE(ledger->Spend("tables", 0.25, 5e-7).ok());
  EXPECT_DOUBLE_EQ(ledger->RemainingEpsilon(), 0.25);
  EXPECT_FALSE(ledger->Spend("greedy", 0.5).ok());
  EXPECT_FALSE(ledger->Spend("delta", 0.1, 1e-6).ok());
  EXPECT_TRUE(ledger->WithinBudget());
  EXPECT_EQ(ledger->entries().size(), 2u);
}

TEST(BudgetLedgerTest, ToleratesRoundingInEvenSplits) {
  auto ledger = BudgetLedger::Create(1.0, 0.0);
  for (int i = 0; i < 7; ++i) ASSERT_TRUE(ledger->Spend("part", 1.0 / 7).ok());
  EXPECT_TRUE(ledger->WithinBudget());
}

TEST(BudgetLedgerTest, InfiniteBudget) {
  auto ledger = BudgetLedger::Create(kInfiniteEpsilon, 0.0);
  ASSERT_TRUE(ledger.ok());
  EXPECT_TRUE(ledger->Spend("all", kInfiniteEpsilon).ok());
  EXPECT_TRUE(ledger->WithinBudget());
  EXPECT_EQ(ledger->ToJson()["spent_epsilon"], "inf");
  auto finite = BudgetLedger::Create(1.0, 0.0);
  EXPECT_FALSE(finite->Spend("all", kInfiniteEpsilon).ok());
}

TEST(BudgetLedgerTest, JsonRoundTrip) {
  auto ledger = BudgetLedger::Create(2.0, 1e-5);
  ASSERT_TRUE(ledger->Spend("a", 0.125, 1e-6).ok());
  auto back = BudgetLedger::FromJson(ledger->ToJson());
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back->entries().size(), 1u);
  EXPECT_EQ(back->entries()[0].epsilon, 0.125);
  EXPECT_EQ(back->delta(), 1e-5);
}

TEST(BudgetLedgerTest, RejectsBadBudgets) {
  EXPECT_FALSE(BudgetLedger::Create(-1.0, 0.0).ok());
  EXPECT_FALSE(BudgetLedger::Create(1.0, 1.0).ok());
}

}  // namespace
}  // namespace missdp
