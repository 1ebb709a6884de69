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
#include <map>

#include <gtest/gtest.h>

#include "missdp/dpcore/mechanisms.h"
#include "missdp/missing/inject.h"
#include "missdp/synth/bayes.h"
#include "missdp/synth/columnwise.h"
#include "missdp/synth/impute.h"
#include "missdp/synth/model.h"
#include "missdp/synth/pipeline.h"
#include "missdp/tabular/marginal.h"
#include "test_util.h"

namespace missdp {
namespace {

using testing_util::CategoricalSchema;
using testing_util::FromRows;
using testing_util::kNA;

// Four attributes with dependence: a1 tracks a0, x tracks a1, a3 is noise.
Dataset Mixed(int64_t n, uint64_t seed) {
  std::vector<AttributeSpec> attrs = {
      *AttributeSpec::Categorical("a0", {"p", "q", "r"}),
      *AttributeSpec::Categorical("a1", {"no", "yes"}),
      *AttributeSpec::Numerical("x", 0.0, 10.0, 5),
      *AttributeSpec::Categorical("a3", {"w", "x", "y", "z"})};
  Schema schema = *Schema::Create(attrs);
  Rng rng = MakeRng(seed);
  std::vector<double> values(static_cast<size_t>(n) * 4);
  for (int64_t i = 0; i < n; ++i) {
    const int a0 = static_cast<int>(UniformIndex(rng, 3));
    const int a1 = UniformUnit(rng) < (a0 == 2 ? 0.9 : 0.2) ? 1 : 0;
    const double x = std::min(10.0, (a1 ? 6.0 : 1.0) + 4.0 * UniformUnit(rng));
    values[i] = a0;
    values[n + i] = a1;
    values[2 * n + i] = x;
    values[3 * n + i] = static_cast<double>(UniformIndex(rng, 4));
  }
  return *Dataset::Create(schema, n, std::move(values));
}

Dataset WithMcar(const Dataset& d, double rate, uint64_t seed) {
  return *Inject(d, {McarSpec{std::vector<double>(d.cols(), rate)}, seed});
}

BudgetLedger Ledger(double eps, double delta = 1e-5) {
  return *BudgetLedger::Create(eps, delta);
}

// Mutual information in bits from raw row scans.
double MiOracle(const Dataset& d, int x, const std::vector<int>& parents) {
  std::map<std::vector<int>, double> joint, px, pp;
  double n = 0;
  for (int64_t i = 0; i < d.rows(); ++i) {
    bool complete = !d.is_missing(i, x);
    for (int p : parents) complete = complete && !d.is_missing(i, p);
    if (!complete) continue;
    std::vector<int> key = {d.code(i, x)}, parent_key;
    for (int p : parents) parent_key.push_back(d.code(i, p));
    key.insert(key.end(), parent_key.begin(), parent_key.end());
    joint[key] += 1;
    px[{d.code(i, x)}] += 1;
    pp[parent_key] += 1;
    n += 1;
  }
  double mi = 0;
  for (const auto& [key, c] : joint) {
    std::vector<int> parent_key(key.begin() + 1, key.end());
    mi += c / n * std::log2(c * n / (px[{key[0]}] * pp[parent_key]));
  }
  return std::max(mi, 0.0);
}

// ---------------------------------------------------------------- imputers

TEST(ImputeTest, MeanOfObservedNumericalValues) {
  Schema s = *Schema::Create({*AttributeSpec::Numerical("v", 0, 10)});
  Dataset d = FromRows(s, {{1}, {2}, {kNA}, {3}});
  Rng rng = MakeRng(1);
  ImputeResult r = MeanModeImpute(d, ExactImputeStats(d), rng);
  EXPECT_FALSE(r.data.HasMissing());
  EXPECT_EQ(r.data.value(2, 0), 2.0);
}

TEST(ImputeTest, CompleteInputIsUnchanged) {
  Dataset d = Mixed(50, 2);
  Rng rng = MakeRng(1);
  EXPECT_EQ(MeanModeImpute(d, ExactImputeStats(d), rng).data, d);
  EXPECT_EQ(RandomImpute(d, rng).data, d);
  EXPECT_EQ(StatisticImpute(d, FillStatistic::kMedian), d);
}

TEST(ImputeTest, CategoricalSamplesObservedDistribution) {
  Schema s = CategoricalSchema({2});
  std::vector<std::vector<double>> rows = {{0}, {0}, {0}, {1}};
  for (int i = 0; i < 10000; ++i) rows.push_back({kNA});
  Dataset d = FromRows(s, rows);
  Rng rng = MakeRng(7);
  Dataset out = MeanModeImpute(d, ExactImputeStats(d), rng).data;
  double a = 0;
  for (int64_t i = 4; i < out.rows(); ++i) a += out.code(i, 0) == 0;
  // Binomial(10^4, 0.75) has sd 0.0043; 0.02 is over four sd.
  EXPECT_NEAR(a / 10000, 0.75, 0.02);
}

TEST(ImputeTest, RandomImputeStaysInDomain) {
  Dataset d = WithMcar(Mixed(400, 3), 0.3, 1);
  Rng rng = MakeRng(5);
  Dataset out = RandomImpute(d, rng).data;
  EXPECT_FALSE(out.HasMissing());
  for (int64_t i = 0; i < out.rows(); ++i) {
    EXPECT_GE(out.value(i, 2), 0.0);
    EXPECT_LE(out.value(i, 2), 10.0);
    if (!d.is_missing(i, 1)) EXPECT_EQ(out.value(i, 1), d.value(i, 1));
  }
}

TEST(ImputeTest, EmptyColumnFallsBackWithWarning) {
  Schema s = CategoricalSchema({3, 2});
  Dataset d = FromRows(s, {{kNA, 0}, {kNA, 1}, {kNA, 1}});
  Rng rng = MakeRng(1);
  ImputeResult r = MeanModeImpute(d, ExactImputeStats(d), rng);
  EXPECT_FALSE(r.data.HasMissing());
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("a0"), std::string::npos);
}

TEST(ImputeTest, PrivateStatsSpendPerColumn) {
  Dataset d = WithMcar(Mixed(2000, 4), 0.2, 2);
  BudgetLedger ledger = Ledger(0.4, 0);
  Rng rng = MakeRng(3);
  auto stats = PrivateImputeStats(d, 0.4, rng, ledger);
  ASSERT_TRUE(stats.ok());
  EXPECT_EQ(ledger.entries().size(), 4u);
  EXPECT_NEAR(ledger.SpentEpsilon(), 0.4, 1e-12);
  EXPECT_TRUE(ledger.WithinBudget());
  for (int j : {0, 1, 3}) {
    EXPECT_EQ(stats->columns[j].probabilities.size(),
              static_cast<size_t>(d.schema().attribute(j).cardinality()));
  }
  EXPECT_GE(stats->columns[2].mean, 0.0);
  EXPECT_LE(stats->columns[2].mean, 10.0);

  BudgetLedger unlimited = Ledger(kInfiniteEpsilon, 0);
  auto exact = PrivateImputeStats(d, kInfiniteEpsilon, rng, unlimited);
  const ImputeStats oracle = ExactImputeStats(d);
  EXPECT_NEAR(exact->columns[2].mean, oracle.columns[2].mean, 1e-12);
  EXPECT_EQ(exact->columns[0].probabilities, oracle.columns[0].probabilities);
}

TEST(ImputeTest, DeterministicStatistics) {
  Schema s = *Schema::Create({*AttributeSpec::Numerical("v", 0, 100),
                              *AttributeSpec::Categorical("c", {"a", "b"})});
  Dataset d = FromRows(s, {{5, 1}, {10, 1}, {30, 0}, {kNA, kNA}, {10, kNA}});
  EXPECT_EQ(StatisticImpute(d, FillStatistic::kMean).value(3, 0), 55.0 / 4);
  EXPECT_EQ(StatisticImpute(d, FillStatistic::kMedian).value(3, 0), 10.0);
  EXPECT_EQ(StatisticImpute(d, FillStatistic::kMode).value(3, 0), 10.0);
  EXPECT_EQ(StatisticImpute(d, FillStatistic::kMean).code(3, 1), 1);
}

// ---------------------------------------------------------------- PrivBayes

TEST(PrivBayesTest, ChainPicksMutualInformationMaximalParents) {
  Schema s = CategoricalSchema({2, 2, 2});
  Rng data_rng = MakeRng(8);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 1000; ++i) {
    const double a = static_cast<double>(UniformIndex(data_rng, 2));
    rows.push_back({a, a, a});
  }
  Dataset d = FromRows(s, rows);
  for (uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng = MakeRng(seed);
    BudgetLedger ledger = Ledger(kInfiniteEpsilon, 0);
    auto fit = FitPrivBayes(d, {kInfiniteEpsilon, 1, 0.5},
                            BayesVariant::kPartialObservation, rng, ledger);
    ASSERT_TRUE(fit.ok()) << fit.status();
    const auto& net = fit->model.network;
    std::vector<int> placed = {net[0].attr};
    for (size_t t = 1; t < net.size(); ++t) {
      double best = 0;
      for (int x = 0; x < 3; ++x) {
        if (std::find(placed.begin(), placed.end(), x) != placed.end()) continue;
        for (int p : placed) best = std::max(best, MiOracle(d, x, {p}));
      }
      EXPECT_NEAR(MiOracle(d, net[t].attr, net[t].parents), best, 1e-12);
      placed.push_back(net[t].attr);
    }
    const bool b_from_a = net[1].attr == 1 && net[1].parents == std::vector<int>{0};
    bool c_from_b = false;
    for (const auto& e : net) c_from_b |= e.attr == 2 && e.parents == std::vector<int>{1};
    if (net[0].attr == 0) EXPECT_TRUE(b_from_a || net[1].attr == 2);
    if (net[0].attr == 1) EXPECT_TRUE(c_from_b || net[1].attr == 0);
    // Noise-free tables are the empirical joint distributions.
    for (const auto& e : net) {
      std::vector<int> attrs = {e.attr};
      attrs.insert(attrs.end(), e.parents.begin(), e.parents.end());
      auto t = Marginal(d, attrs);
      for (size_t c = 0; c < t->size(); ++c) {
        EXPECT_DOUBLE_EQ(e.table[c], t->counts[c] / t->observed_rows);
      }
    }
  }
}

TEST(PrivBayesTest, VariantsAgreeOnCompleteData) {
  Dataset d = Mixed(800, 9);
  for (double eps : {0.5, kInfiniteEpsilon}) {
    Rng r1 = MakeRng(4), r2 = MakeRng(4);
    BudgetLedger l1 = Ledger(eps), l2 = Ledger(eps);
    auto a = FitPrivBayes(d, {eps, 2, 0.5}, BayesVariant::kCompleteRow, r1, l1);
    auto b = FitPrivBayes(d, {eps, 2, 0.5}, BayesVariant::kPartialObservation, r2, l2);
    EXPECT_EQ(ModelToJson(a->model), ModelToJson(b->model));
  }
}

TEST(PrivBayesTest, PartialObservationUsesAtLeastTheCompleteRows) {
  Dataset d = WithMcar(Mixed(3000, 10), 0.2, 3);
  const int64_t complete = CountCompleteRows(d, AllAttributes(d.schema()));
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Rng r1 = MakeRng(seed), r2 = MakeRng(seed);
    BudgetLedger l1 = Ledger(1.0), l2 = Ledger(1.0);
    auto cr = FitPrivBayes(d, {1.0, 2, 0.5}, BayesVariant::kCompleteRow, r1, l1);
    auto po = FitPrivBayes(d, {1.0, 2, 0.5}, BayesVariant::kPartialObservation, r2, l2);
    ASSERT_TRUE(cr.ok() && po.ok());
    for (const auto& e : cr->model.network) EXPECT_EQ(e.observed_rows, complete);
    for (const auto& e : po->model.network) {
      EXPECT_GE(e.observed_rows, complete);
      std::vector<int> attrs = {e.attr};
      attrs.insert(attrs.end(), e.parents.begin(), e.parents.end());
      EXPECT_EQ(e.observed_rows, CountCompleteRows(d, attrs));
    }
  }
}

TEST(PrivBayesTest, SameNumberOfPrivateReleases) {
  Dataset d = WithMcar(Mixed(1000, 11), 0.1, 4);
  Rng r1 = MakeRng(1), r2 = MakeRng(1);
  BudgetLedger l1 = Ledger(1.0), l2 = Ledger(1.0);
  auto cr = FitPrivBayes(d, {1.0, 2, 0.5}, BayesVariant::kCompleteRow, r1, l1);
  auto po = FitPrivBayes(d, {1.0, 2, 0.5}, BayesVariant::kPartialObservation, r2, l2);
  EXPECT_EQ(cr->calls, po->calls);
  EXPECT_EQ(cr->calls.exponential, 3);
  EXPECT_EQ(cr->calls.noisy_tables, 4);
  EXPECT_EQ(l1.entries().size(), l2.entries().size());
  EXPECT_NEAR(l1.SpentEpsilon(), 0.5 * 3 / 4 + 0.5, 1e-12);
  EXPECT_TRUE(l1.WithinBudget());
}

TEST(PrivBayesTest, ModelsAreWellFormed) {
  Dataset d = WithMcar(Mixed(600, 12), 0.25, 5);
  for (int degree : {1, 2, 3}) {
    Rng rng = MakeRng(degree);
    BudgetLedger ledger = Ledger(0.8);
    auto fit = FitPrivBayes(d, {0.8, degree, 0.5},
                            BayesVariant::kPartialObservation, rng, ledger);
    ASSERT_TRUE(fit.ok());
    EXPECT_TRUE(ValidateModel(fit->model).ok());
    EXPECT_TRUE(fit->model.network[0].parents.empty());
  }
}

TEST(PrivBayesTest, NoCompleteRows) {
  Schema s = CategoricalSchema({2, 2});
  Dataset d = FromRows(s, {{0, kNA}, {kNA, 1}, {1, kNA}, {kNA, 0}});
  Rng rng = MakeRng(1);
  BudgetLedger ledger = Ledger(1.0);
  auto cr = FitPrivBayes(d, {1.0, 1, 0.5}, BayesVariant::kCompleteRow, rng, ledger);
  EXPECT_EQ(cr.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_NE(cr.status().message().find("no complete rows"), std::string::npos);
  BudgetLedger ledger2 = Ledger(1.0);
  EXPECT_TRUE(FitPrivBayes(d, {1.0, 1, 0.5}, BayesVariant::kPartialObservation,
                           rng, ledger2).ok());
}

TEST(GenerateBayesTest, FairCoinFrequency) {
  BayesModel m{CategoricalSchema({2}), 1, {{0, {}, {0.5, 0.5}, 0}}};
  Rng rng = MakeRng(3);
  auto d = GenerateBayes(m, 100000, rng);
  ASSERT_TRUE(d.ok());
  double ones = 0;
  for (int64_t i = 0; i < d->rows(); ++i) ones += d->code(i, 0);
  // sd is 0.0016; 0.01 is six sd.
  EXPECT_NEAR(ones / 100000, 0.5, 0.01);
}

TEST(GenerateBayesTest, DeterministicTableAndShape) {
  BayesModel m{CategoricalSchema({2, 3}), 1,
               {{0, {}, {1.0, 0.0}, 0},
                {1, {0}, {0.0, 0.0, 0.0, 0.0, 1.0, 0.0}, 0}}};
  Rng rng = MakeRng(3);
  auto d = GenerateBayes(m, 257, rng);
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(d->rows(), 257);
  EXPECT_FALSE(d->HasMissing());
  for (int64_t i = 0; i < d->rows(); ++i) {
    EXPECT_EQ(d->code(i, 0), 0);
    // Pr[a1 | a0 = 0] is stored as zeros; the marginal puts all mass on 2.
    EXPECT_EQ(d->code(i, 1), 2);
  }
}

// ---------------------------------------------------------------- Kamino

TEST(ColumnwiseTest, NoiseFreeFitIsEmpirical) {
  Dataset d = Mixed(500, 13);
  Rng rng = MakeRng(1);
  BudgetLedger ledger = Ledger(kInfiniteEpsilon, 0);
  auto fit = FitColumnwise(d, {kInfiniteEpsilon, 0, 2, SequenceOrder::kSchema, {}},
                           ColumnVariant::kCompleteRow, rng, ledger);
  ASSERT_TRUE(fit.ok()) << fit.status();
  auto first = Marginal(d, std::vector<int>{0});
  for (int c = 0; c < 3; ++c) {
    EXPECT_DOUBLE_EQ(fit->model.first_hist[c], first->counts[c] / 500);
  }
  for (const Predictor& p : fit->model.predictors) {
    std::vector<int> attrs = p.parents;
    attrs.push_back(p.target);
    auto t = Marginal(d, attrs);
    const int card = d.schema().attribute(p.target).cardinality();
    for (size_t row = 0; row < t->size(); row += card) {
      double mass = 0;
      for (int x = 0; x < card; ++x) mass += t->counts[row + x];
      if (mass == 0) continue;
      for (int x = 0; x < card; ++x) {
        EXPECT_DOUBLE_EQ(p.table[row + x], t->counts[row + x] / mass);
      }
    }
  }
}

TEST(ColumnwiseTest, ImputeVariantFillsEveryCell) {
  Dataset d = WithMcar(Mixed(1000, 14), 0.2, 6);
  Rng rng = MakeRng(2);
  BudgetLedger ledger = Ledger(1.0);
  auto fit = FitColumnwise(d, {1.0, 1e-5, 2, SequenceOrder::kSchema, {}},
                           ColumnVariant::kImpute, rng, ledger);
  ASSERT_TRUE(fit.ok());
  EXPECT_FALSE(fit->working.HasMissing());
  EXPECT_EQ(fit->working.rows(), d.rows());
  EXPECT_TRUE(ledger.WithinBudget());
  EXPECT_NEAR(ledger.SpentEpsilon(), 1.0, 1e-12);
  EXPECT_NEAR(ledger.SpentDelta(), 5e-6, 1e-18);
  EXPECT_TRUE(ValidateModel(fit->model).ok());
}

TEST(ColumnwiseTest, CorrelatedColumnRestoredExactly) {
  Schema s = CategoricalSchema({2, 2});
  Rng data_rng = MakeRng(15);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 400; ++i) {
    const double a = static_cast<double>(UniformIndex(data_rng, 2));
    rows.push_back({a, a});
  }
  Dataset truth = FromRows(s, rows);
  Dataset d = *Inject(truth, {McarSpec{{0.0, 0.3}}, 2});
  Rng rng = MakeRng(3);
  BudgetLedger ledger = Ledger(kInfiniteEpsilon, 0);
  auto fit = FitColumnwise(d, {kInfiniteEpsilon, 0, 2, SequenceOrder::kSchema, {0, 1}},
                           ColumnVariant::kImpute, rng, ledger);
  ASSERT_TRUE(fit.ok());
  for (int64_t i = 0; i < d.rows(); ++i) {
    EXPECT_EQ(fit->working.code(i, 1), fit->working.code(i, 0));
  }
}

TEST(ColumnwiseTest, GenerationFrequencyAndShape) {
  ColumnModel m{CategoricalSchema({2, 2}), 1, {0, 1}, {0.5, 0.5}, 0,
                {{1, {0}, {0.0, 1.0, 1.0, 0.0}, 0}}};
  Rng rng = MakeRng(9);
  auto d = GenerateColumnwise(m, 100000, rng);
  ASSERT_TRUE(d.ok());
  EXPECT_FALSE(d->HasMissing());
  double ones = 0;
  for (int64_t i = 0; i < d->rows(); ++i) {
    ones += d->code(i, 0);
    EXPECT_EQ(d->code(i, 1), 1 - d->code(i, 0));
  }
  EXPECT_NEAR(ones / 100000, 0.5, 0.01);
}

TEST(ColumnwiseTest, SequenceOrders) {
  Dataset d = *Inject(Mixed(100, 16), {McarSpec{{0.1, 0.0, 0.3, 0.1}}, 1});
  EXPECT_EQ(DefaultSequence(d, SequenceOrder::kSchema), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(DefaultSequence(d, SequenceOrder::kMissingDescending),
            (std::vector<int>{2, 0, 3, 1}));
}

TEST(ColumnwiseTest, RejectsBadInput) {
  Dataset d = Mixed(100, 17);
  Rng rng = MakeRng(1);
  BudgetLedger ledger = Ledger(1.0);
  EXPECT_FALSE(FitColumnwise(d, {1.0, 0.0, 2, SequenceOrder::kSchema, {}},
                             ColumnVariant::kImpute, rng, ledger).ok());
  EXPECT_FALSE(FitColumnwise(d, {1.0, 1e-5, 2, SequenceOrder::kSchema, {0, 0, 1, 2}},
                             ColumnVariant::kImpute, rng, ledger).ok());
}

// ---------------------------------------------------------------- model io

TEST(ModelIoTest, RoundTripAndValidation) {
  Dataset d = WithMcar(Mixed(300, 18), 0.1, 1);
  SynthConfig cfg;
  for (Generator g : {Generator::kPrivBayesE, Generator::kKaminoI}) {
    cfg.generator = g;
    auto r = RunPipeline(d, cfg);
    ASSERT_TRUE(r.ok()) << r.status();
    auto back = ModelFromJson(ModelToJson(r->model));
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_EQ(ModelToJson(*back), ModelToJson(r->model));
    Rng a = MakeRng(1), b = MakeRng(1);
    EXPECT_EQ(*Generate(*back, 50, a), *Generate(r->model, 50, b));
  }
  nlohmann::json broken = ModelToJson(RunPipeline(d, cfg)->model);
  broken["predictors"][0]["table"][0] = 5.0;
  EXPECT_FALSE(ModelFromJson(broken).ok());
  EXPECT_FALSE(ModelFromJson({{"kind", "bayes"}}).ok());
}

// ---------------------------------------------------------------- pipeline

std::vector<SynthConfig> AllConfigs(double eps) {
  std::vector<SynthConfig> out;
  for (Generator g : {Generator::kPrivBayes, Generator::kPrivBayesE,
                      Generator::kKamino, Generator::kKaminoI}) {
    SynthConfig c;
    c.generator = g;
    c.epsilon = eps;
    out.push_back(c);
    c.wrapper = Wrapper::kCompleteRow;
    out.push_back(c);
    c.wrapper = Wrapper::kImputeFirst;
    for (ImputerKind imp : {ImputerKind::kRandom, ImputerKind::kMeanMode,
                            ImputerKind::kKamino}) {
      c.imputer = imp;
      for (double split : {0.25, 0.5, 0.75}) {
        c.split_fraction = split;
        out.push_back(c);
        if (imp == ImputerKind::kRandom) break;
      }
    }
  }
  return out;
}

TEST(PipelineTest, EveryConfigurationStaysWithinBudget) {
  Dataset d = WithMcar(Mixed(600, 19), 0.15, 7);
  for (SynthConfig cfg : AllConfigs(1.0)) {
    cfg.seed = 3;
    cfg.n_out = 321;
    auto r = RunPipeline(d, cfg);
    ASSERT_TRUE(r.ok()) << MethodLabel(cfg) << ": " << r.status();
    EXPECT_LE(r->ledger.SpentEpsilon(), 1.0 * (1 + 1e-9)) << MethodLabel(cfg);
    EXPECT_LE(r->ledger.SpentDelta(), r->ledger.delta() * (1 + 1e-9));
    for (const auto& [phase, sub] : r->details) EXPECT_TRUE(sub.WithinBudget());
    EXPECT_EQ(r->synthetic.rows(), 321);
    EXPECT_FALSE(r->synthetic.HasMissing());
    EXPECT_EQ(r->synthetic.schema(), d.schema());
  }
}

TEST(PipelineTest, LedgerShapes) {
  Dataset d = WithMcar(Mixed(500, 20), 0.2, 8);
  SynthConfig cfg;
  cfg.generator = Generator::kPrivBayes;
  cfg.epsilon = 2.0;

  cfg.wrapper = Wrapper::kCompleteRow;
  auto cr = RunPipeline(d, cfg);
  ASSERT_EQ(cr->ledger.entries().size(), 1u);
  EXPECT_EQ(cr->ledger.entries()[0].epsilon, 2.0);

  cfg.wrapper = Wrapper::kImputeFirst;
  cfg.imputer = ImputerKind::kRandom;
  auto random = RunPipeline(d, cfg);
  EXPECT_EQ(random->ledger.SpentEpsilonWithPrefix("impute"), 0.0);
  EXPECT_EQ(random->ledger.SpentEpsilonWithPrefix("generate"), 2.0);

  cfg.imputer = ImputerKind::kMeanMode;
  cfg.split_fraction = 0.25;
  auto mean = RunPipeline(d, cfg);
  EXPECT_DOUBLE_EQ(mean->ledger.SpentEpsilonWithPrefix("impute"), 0.5);
  EXPECT_DOUBLE_EQ(mean->ledger.SpentEpsilonWithPrefix("generate"), 1.5);
}

TEST(PipelineTest, AdaptiveMethodsMatchBaselinesOnCompleteDataWithoutNoise) {
  Dataset d = Mixed(400, 21);
  SynthConfig cfg;
  cfg.epsilon = kInfiniteEpsilon;
  cfg.seed = 5;
  cfg.generator = Generator::kPrivBayes;
  auto pb = RunPipeline(d, cfg);
  cfg.generator = Generator::kPrivBayesE;
  auto pbe = RunPipeline(d, cfg);
  EXPECT_EQ(pb->synthetic, pbe->synthetic);
  cfg.generator = Generator::kKamino;
  auto k = RunPipeline(d, cfg);
  cfg.generator = Generator::kKaminoI;
  auto ki = RunPipeline(d, cfg);
  EXPECT_EQ(k->synthetic, ki->synthetic);
}

TEST(PipelineTest, Deterministic) {
  Dataset d = WithMcar(Mixed(300, 22), 0.2, 9);
  for (SynthConfig cfg : AllConfigs(0.7)) {
    cfg.seed = 11;
    EXPECT_EQ(RunPipeline(d, cfg)->synthetic, RunPipeline(d, cfg)->synthetic)
        << MethodLabel(cfg);
  }
}

TEST(PipelineTest, CompleteRowFailsWithoutCompleteRows) {
  Schema s = CategoricalSchema({2, 2});
  Dataset d = FromRows(s, {{0, kNA}, {kNA, 1}, {1, kNA}, {kNA, 0}});
  SynthConfig cfg;
  cfg.generator = Generator::kPrivBayes;
  EXPECT_EQ(RunPipeline(d, cfg).status().code(), absl::StatusCode::kFailedPrecondition);
  cfg.generator = Generator::kKamino;
  EXPECT_EQ(RunPipeline(d, cfg).status().code(), absl::StatusCode::kFailedPrecondition);
  cfg.generator = Generator::kPrivBayesE;
  EXPECT_TRUE(RunPipeline(d, cfg).ok());
  cfg.generator = Generator::kKaminoI;
  EXPECT_TRUE(RunPipeline(d, cfg).ok());
}

TEST(PipelineTest, ConfigJson) {
  auto cfg = SynthConfigFromJson(nlohmann::json::parse(R"({
      "method": "impute_first", "imputer": "mean_mode", "split_fraction": 0.25,
      "inner": "kamino", "epsilon": "inf", "seed": 4})"));
  ASSERT_TRUE(cfg.ok()) << cfg.status();
  EXPECT_EQ(cfg->wrapper, Wrapper::kImputeFirst);
  EXPECT_EQ(cfg->generator, Generator::kKamino);
  EXPECT_TRUE(IsInfinite(cfg->epsilon));
  EXPECT_EQ(MethodLabel(*cfg), "impute_first(mean_mode,0.25,kamino)");
  auto back = SynthConfigFromJson(SynthConfigToJson(*cfg));
  EXPECT_EQ(SynthConfigToJson(*back), SynthConfigToJson(*cfg));
  EXPECT_FALSE(SynthConfigFromJson({{"method", "gan"}}).ok());
  EXPECT_FALSE(SynthConfigFromJson({{"method", "privbayes"}, {"epsilon", -1}}).ok());
  EXPECT_FALSE(SynthConfigFromJson({{"method", "privbayes"}, {"degree", 0}}).ok());
}

}  // namespace
}  // namespace missdp
