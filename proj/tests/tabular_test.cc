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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "missdp/tabular/csv.h"
#include "missdp/tabular/dataset.h"
#include "missdp/tabular/marginal.h"
#include "missdp/tabular/schema.h"
#include "test_util.h"

namespace missdp {
namespace {

using testing_util::CategoricalSchema;
using testing_util::FromRows;
using testing_util::kNA;
using testing_util::RandomCategorical;

Schema PersonSchema() {
  return *Schema::Create({
      *AttributeSpec::Numerical("age", 0, 100, 10),
      *AttributeSpec::Categorical("sex", {"F", "M"}),
      *AttributeSpec::Categorical("income", {"<=50K", ">50K"}),
  });
}

TEST(SchemaTest, RejectsInvalidAttributes) {
  EXPECT_FALSE(AttributeSpec::Categorical("x", {}).ok());
  EXPECT_FALSE(AttributeSpec::Categorical("x", {"a", "a"}).ok());
  EXPECT_FALSE(AttributeSpec::Numerical("x", 1, 1).ok());
  EXPECT_FALSE(AttributeSpec::Numerical("x", 0, 1, 0).ok());
  auto a = *AttributeSpec::Numerical("x", 0, 1);
  EXPECT_FALSE(Schema::Create({a, a}).ok());
}

TEST(SchemaTest, JsonRoundTrip) {
  const Schema s = PersonSchema();
  auto back = Schema::FromJson(s.ToJson());
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, s);
  EXPECT_EQ(s.IndexOf("sex"), 1);
  EXPECT_FALSE(s.IndexOf("zip").has_value());
}

TEST(SchemaTest, DiscretizationFormula) {
  auto a = *AttributeSpec::Numerical("x", -1.0, 2.0, 3);
  EXPECT_EQ(a.BinOf(-1.0), 0);
  EXPECT_EQ(a.BinOf(-0.0001), 0);
  EXPECT_EQ(a.BinOf(0.0), 1);
  EXPECT_EQ(a.BinOf(1.999), 2);
  EXPECT_EQ(a.BinOf(2.0), 2);  // max maps to the last bin
  auto ten = *AttributeSpec::Numerical("age", 17, 90);
  EXPECT_EQ(ten.cardinality(), 10);
  for (double v = 17; v <= 90; v += 0.37) {
    const int expected =
        std::min(static_cast<int>(std::floor((v - 17) / 7.3)), 9);
    EXPECT_EQ(ten.BinOf(v), expected) << v;
    EXPECT_EQ(ten.BinOf(ten.BinMidpoint(ten.BinOf(v))), ten.BinOf(v));
  }
}

TEST(CsvTest, EmptyFieldAndTokenAreMissing) {
  std::istringstream in("age,sex,income\n30,F,<=50K\n41,,>50K\n?,M,>50K\n");
  auto d = ParseCsv(in, PersonSchema());
  ASSERT_TRUE(d.ok()) << d.status();
  EXPECT_EQ(d->rows(), 3);
  EXPECT_EQ(d->TotalMissing(), 2);
  EXPECT_TRUE(d->is_missing(1, 1));
  EXPECT_TRUE(d->is_missing(2, 0));
  EXPECT_TRUE(std::isnan(d->value(1, 1)));
  EXPECT_DOUBLE_EQ(d->value(1, 0), 41.0);
  EXPECT_EQ(d->code(1, 0), 4);
}

TEST(CsvTest, ThreeRowsOneEmptyFieldSetsOneMaskBit) {
  std::istringstream in("age,sex,income\n30,F,<=50K\n41,,>50K\n22,M,>50K\n");
  auto d = ParseCsv(in, PersonSchema());
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(d->TotalMissing(), 1);
}

TEST(CsvTest, RejectsMalformedInput) {
  {
    std::istringstream in("age,income\n30,<=50K\n");
    auto d = ParseCsv(in, PersonSchema());
    EXPECT_FALSE(d.ok());
  }
  {
    std::istringstream in("age,sex,income\n30,X,<=50K\n");
    auto d = ParseCsv(in, PersonSchema());
    ASSERT_FALSE(d.ok());
    EXPECT_NE(d.status().message().find("row 0"), std::string::npos);
    EXPECT_NE(d.status().message().find("sex"), std::string::npos);
  }
  {
    std::istringstream in("age,sex,income\nold,F,<=50K\n");
    EXPECT_FALSE(ParseCsv(in, PersonSchema()).ok());
  }
  {
    std::istringstream in("age,sex,income\n30,F\n");
    EXPECT_FALSE(ParseCsv(in, PersonSchema()).ok());
  }
  {
    std::istringstream in("age,sex,income\n130,F,<=50K\n");
    EXPECT_FALSE(ParseCsv(in, PersonSchema()).ok());
  }
}

TEST(CsvTest, WriteThenReadPreservesCellsAndMask) {
  const Dataset d = FromRows(PersonSchema(), {{30.25, 0, 1}, {kNA, 1, 0}, {99.5, kNA, kNA}});
  std::istringstream in(ToCsv(d));
  auto back = ParseCsv(in, PersonSchema());
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, d);
}

TEST(CsvTest, AdultShapedFile) {
  // 15 columns and 32561 rows, the size of the census income extract.
  std::vector<AttributeSpec> attrs;
  for (int j = 0; j < 15; ++j) {
    attrs.push_back(j % 2 == 0 ? *AttributeSpec::Numerical("n" + std::to_string(j), 0, 100)
                               : *AttributeSpec::Categorical("c" + std::to_string(j), {"a", "b", "c"}));
  }
  const Schema schema = *Schema::Create(attrs);
  const auto path = std::filesystem::temp_directory_path() / "missdp_adult_shape.csv";
  {
    std::ofstream out(path);
    for (int j = 0; j < 15; ++j) out << (j ? "," : "") << schema.attribute(j).name();
    out << "\n";
    for (int i = 0; i < 32561; ++i) {
      for (int j = 0; j < 15; ++j) {
        out << (j ? "," : "");
        if (j % 2 == 0) out << (i * 7 + j) % 101;
        else out << "abc"[(i + j) % 3];
      }
      out << "\n";
    }
  }
  auto d = LoadCsv(path.string(), schema);
  ASSERT_TRUE(d.ok()) << d.status();
  EXPECT_EQ(d->rows(), 32561);
  EXPECT_EQ(d->cols(), 15);
  std::filesystem::remove(path);
}

TEST(CompleteRowsTest, IdentityOnCompleteData) {
  const Schema s = CategoricalSchema({2, 3, 2});
  const Dataset d = RandomCategorical(s, 50, 1);
  EXPECT_EQ(CompleteRows(d, AllAttributes(s)), d);
}

TEST(CompleteRowsTest, SubsetSemanticsAndOrder) {
  const Schema s = CategoricalSchema({2, 2, 2, 2});
  const Dataset d = FromRows(s, {{0, 1, 0, kNA}, {1, kNA, 0, 0}, {1, 1, 1, 1}});
  const std::vector<int> first_two = {0, 1};
  const Dataset sub = CompleteRows(d, first_two);
  ASSERT_EQ(sub.rows(), 2);
  EXPECT_EQ(sub.code(0, 0), 0);  // row missing only attribute 3 is kept
  EXPECT_EQ(sub.code(1, 0), 1);
  EXPECT_EQ(CompleteRows(d, AllAttributes(s)).rows(), 1);
  const Dataset none = CompleteRows(FromRows(s, {{kNA, 0, 0, 0}}), AllAttributes(s));
  EXPECT_EQ(none.rows(), 0);
}

TEST(MarginalTest, HandCounts) {
  const Schema s = CategoricalSchema({2});
  const Dataset d = FromRows(s, {{0}, {1}, {1}, {kNA}});
  const std::vector<int> a0 = {0};
  auto t = Marginal(d, a0);
  ASSERT_TRUE(t.ok());
  EXPECT_EQ(t->counts, (std::vector<double>{1, 2}));
  EXPECT_EQ(t->observed_rows, 3);

  const Schema s2 = CategoricalSchema({2, 2});
  const Dataset crossed = FromRows(s2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const std::vector<int> both = {0, 1};
  auto t2 = Marginal(crossed, both);
  ASSERT_TRUE(t2.ok());
  EXPECT_EQ(t2->counts, (std::vector<double>{1, 1, 1, 1}));
}

TEST(MarginalTest, MatchesRowScanOracle) {
  const Schema s = CategoricalSchema({3, 2, 4, 2, 3, 5});
  const Dataset d = RandomCategorical(s, 2000, 7, 0.15);
  const std::vector<int> attrs = {2, 5};
  auto t = Marginal(d, attrs);
  ASSERT_TRUE(t.ok());
  std::map<std::pair<int, int>, double> oracle;
  int64_t observed = 0;
  for (int64_t i = 0; i < d.rows(); ++i) {
    if (d.is_missing(i, 2) || d.is_missing(i, 5)) continue;
    oracle[{d.code(i, 2), d.code(i, 5)}] += 1;
    ++observed;
  }
  EXPECT_EQ(t->observed_rows, observed);
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 5; ++y) {
      const std::vector<int> cell = {x, y};
      EXPECT_EQ(t->counts[t->Offset(cell)], (oracle[{x, y}]));
    }
  }
}

TEST(MarginalTest, CellCapNamesAttributes) {
  const Schema s = CategoricalSchema({10, 10, 10});
  const Dataset d = RandomCategorical(s, 10, 1);
  const std::vector<int> attrs = {0, 1, 2};
  auto t = Marginal(d, attrs, {.cell_cap = 500});
  ASSERT_FALSE(t.ok());
  EXPECT_NE(t.status().message().find("a2"), std::string::npos);
  EXPECT_FALSE(Marginal(d, std::vector<int>{}).ok());
  EXPECT_FALSE(Marginal(d, std::vector<int>{0, 0}).ok());
}

TEST(MarginalTest, ObservedRowsEqualsCompleteRowCount) {
  const Schema s = CategoricalSchema({2, 3, 2, 4});
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset d = RandomCategorical(s, 300, seed, 0.2);
    for (const std::vector<int>& attrs :
         {std::vector<int>{0}, std::vector<int>{1, 3}, std::vector<int>{0, 2, 3}}) {
      auto t = Marginal(d, attrs);
      ASSERT_TRUE(t.ok());
      EXPECT_EQ(t->observed_rows, CompleteRows(d, attrs).rows());
      double sum = 0;
      for (double c : t->counts) sum += c;
      EXPECT_EQ(sum, t->observed_rows);
    }
  }
}

TEST(MarginalTest, ProjectionIsConsistentOnCompleteData) {
  const Schema s = CategoricalSchema({3, 4});
  const Dataset d = RandomCategorical(s, 500, 3);
  auto joint = Marginal(d, std::vector<int>{0, 1});
  auto single = Marginal(d, std::vector<int>{0});
  ASSERT_TRUE(joint.ok() && single.ok());
  EXPECT_EQ(Project(*joint, std::vector<int>{0}).counts, single->counts);
}

TEST(MutualInformationTest, PerfectDependenceIsOneBit) {
  const Schema s = CategoricalSchema({2, 2});
  const Dataset d = FromRows(s, {{0, 0}, {1, 1}, {0, 0}, {1, 1}});
  auto mi = MutualInformation(d, 1, std::vector<int>{0});
  ASSERT_TRUE(mi.ok());
  EXPECT_NEAR(*mi, 1.0, 1e-12);
}

TEST(MutualInformationTest, ProductDistributionIsZero) {
  const Schema s = CategoricalSchema({2, 2});
  const Dataset d = FromRows(s, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EXPECT_NEAR(*MutualInformation(d, 0, std::vector<int>{1}), 0.0, 1e-15);
}

TEST(MutualInformationTest, MatchesDefinitionalSum) {
  const Schema s = CategoricalSchema({3, 2, 2});
  Dataset d = RandomCategorical(s, 400, 11, 0.1);
  // Definitional oracle over rows complete on all three attributes.
  std::map<std::tuple<int, int, int>, double> joint;
  double n = 0;
  for (int64_t i = 0; i < d.rows(); ++i) {
    if (d.is_missing(i, 0) || d.is_missing(i, 1) || d.is_missing(i, 2)) continue;
    joint[{d.code(i, 0), d.code(i, 1), d.code(i, 2)}] += 1;
    n += 1;
  }
  std::map<int, double> px;
  std::map<std::pair<int, int>, double> ppsi;
  for (const auto& [key, c] : joint) {
    px[std::get<0>(key)] += c;
    ppsi[{std::get<1>(key), std::get<2>(key)}] += c;
  }
  double oracle = 0;
  for (const auto& [key, c] : joint) {
    const double pxy = c / n;
    const double pxm = px[std::get<0>(key)] / n;
    const double ppm = ppsi[{std::get<1>(key), std::get<2>(key)}] / n;
    oracle += pxy * std::log2(pxy / (pxm * ppm));
  }
  auto mi = MutualInformation(d, 0, std::vector<int>{1, 2});
  ASSERT_TRUE(mi.ok());
  EXPECT_NEAR(*mi, oracle, 1e-12);
}

TEST(MutualInformationTest, SymmetricForSingleParent) {
  const Schema s = CategoricalSchema({3, 5});
  for (uint64_t seed = 0; seed < 25; ++seed) {
    const Dataset d = RandomCategorical(s, 200, seed, 0.1);
    EXPECT_NEAR(*MutualInformation(d, 0, std::vector<int>{1}),
                *MutualInformation(d, 1, std::vector<int>{0}), 1e-12);
  }
}

TEST(MutualInformationTest, ZeroObservedRowsGivesZero) {
  const Schema s = CategoricalSchema({2, 2});
  const Dataset d = FromRows(s, {{kNA, 0}, {1, kNA}});
  EXPECT_EQ(*MutualInformation(d, 0, std::vector<int>{1}), 0.0);
  EXPECT_FALSE(MutualInformation(d, 0, std::vector<int>{0}).ok());
  EXPECT_FALSE(MutualInformation(d, 0, std::vector<int>{}).ok());
}

}  // namespace
}  // namespace missdp
