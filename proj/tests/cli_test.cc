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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "missdp/cli/bench.h"
#include "missdp/cli/commands.h"
#include "missdp/cli/manifest.h"
#include "missdp/tabular/csv.h"

namespace missdp {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("missdp_cli_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    Write("schema.json", R"({"attributes": [
      {"name": "a", "kind": "categorical", "domain": ["x", "y"]},
      {"name": "b", "kind": "categorical", "domain": ["p", "q", "r"]},
      {"name": "c", "kind": "numerical", "min": 0, "max": 10, "bins": 5},
      {"name": "d", "kind": "categorical", "domain": ["u", "v"]},
      {"name": "e", "kind": "categorical", "domain": ["s", "t"]}]})");
    std::string csv = "a,b,c,d,e\n";
    for (int i = 0; i < 100; ++i) {
      csv += std::string(i % 2 ? "x" : "y") + "," + "pqr"[i % 3] + "," +
             std::to_string((i * 37) % 100 / 10.0) + "," + (i % 2 ? "u" : "v") +
             "," + "st"[(i / 3) % 2] + "\n";
    }
    Write("data.csv", csv);
  }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  void Write(const std::string& name, const std::string& text) {
    std::ofstream(Path(name)) << text;
  }
  std::string Read(const std::string& name) const {
    return *ReadFile(Path(name));
  }
  nlohmann::json ReadJson(const std::string& name) const {
    return nlohmann::json::parse(Read(name));
  }

  int Run(std::vector<std::string> args) {
    args.insert(args.begin(), "missdp");
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, InjectExactCount) {
  ASSERT_EQ(Run({"inject", "--input", Path("data.csv"), "--schema",
                 Path("schema.json"), "--mechanism", "mcar-global", "--rate",
                 "0.2", "--seed", "4", "--output", Path("inj")}),
            kExitOk)
      << err_.str();
  auto mask = LoadMaskCsv(Path("inj/mask.csv"));
  ASSERT_TRUE(mask.ok());
  int64_t set = 0;
  for (uint8_t m : mask->mask) set += m;
  EXPECT_EQ(set, 100);
  const nlohmann::json manifest = ReadJson("inj/manifest.json");
  EXPECT_EQ(manifest["command"], "inject");
  EXPECT_EQ(manifest["version"], LibraryVersion());
  EXPECT_EQ(manifest["inputs"][0]["sha256"], *FileSha256(Path("data.csv")));
  EXPECT_EQ(manifest["config"]["missing"]["mechanism"], "mcar_global");
}

TEST_F(CliTest, InjectMissingSchemaIsUsageError) {
  EXPECT_EQ(Run({"inject", "--input", Path("data.csv"), "--mechanism", "mcar",
                 "--rate", "0.1", "--output", Path("inj")}),
            kExitUsage);
  EXPECT_NE(err_.str().find("--schema"), std::string::npos);
  EXPECT_NE(err_.str().find("Usage"), std::string::npos);
}

TEST_F(CliTest, InjectIsByteIdentical) {
  for (const char* out : {"r1", "r2"}) {
    ASSERT_EQ(Run({"inject", "--input", Path("data.csv"), "--schema",
                   Path("schema.json"), "--mechanism", "mar", "--rate", "0.3",
                   "--seed", "8", "--output", Path(out)}),
              kExitOk)
        << err_.str();
  }
  EXPECT_EQ(Read("r1/data.csv"), Read("r2/data.csv"));
  EXPECT_EQ(Read("r1/mask.csv"), Read("r2/mask.csv"));
}

TEST_F(CliTest, InjectRejectsBadInput) {
  EXPECT_EQ(Run({"inject", "--input", Path("nope.csv"), "--schema",
                 Path("schema.json"), "--mechanism", "mcar", "--rate", "0.1",
                 "--output", Path("o")}),
            kExitUsage);
  EXPECT_EQ(Run({"inject", "--input", Path("data.csv"), "--schema",
                 Path("schema.json"), "--mechanism", "mcar", "--rate", "1.5",
                 "--output", Path("o")}),
            kExitUsage);
  EXPECT_EQ(Run({"inject", "--input", Path("data.csv"), "--schema",
                 Path("schema.json"), "--mechanism", "bogus", "--rate", "0.1",
                 "--output", Path("o")}),
            kExitUsage);
}

TEST_F(CliTest, SynthesizeInfiniteEpsilon) {
  for (const char* out : {"s1", "s2"}) {
    ASSERT_EQ(Run({"synthesize", "--input", Path("data.csv"), "--schema",
                   Path("schema.json"), "--method", "privbayese", "--epsilon",
                   "inf", "--seed", "2", "--output", Path(out), "--save-model"}),
              kExitOk)
        << err_.str();
  }
  const nlohmann::json ledger = ReadJson("s1/ledger.json");
  EXPECT_EQ(ledger["budget"]["epsilon"], "inf");
  EXPECT_EQ(ledger["budget"]["spent_epsilon"], "inf");
  EXPECT_EQ(Read("s1/synthetic.csv"), Read("s2/synthetic.csv"));
  EXPECT_EQ(Read("s1/ledger.json"), Read("s2/ledger.json"));
  EXPECT_TRUE(fs::exists(Path("s1/model.json")));
}

TEST_F(CliTest, SynthesizeImputeFirstSplitsBudget) {
  ASSERT_EQ(Run({"inject", "--input", Path("data.csv"), "--schema",
                 Path("schema.json"), "--mechanism", "mcar-global", "--rate",
                 "0.1", "--output", Path("inj")}),
            kExitOk);
  ASSERT_EQ(Run({"synthesize", "--input", Path("inj/data.csv"), "--schema",
                 Path("schema.json"), "--method",
                 "impute-first:mean:0.5:privbayes", "--epsilon", "1",
                 "--output", Path("s")}),
            kExitOk)
      << err_.str();
  const nlohmann::json entries = ReadJson("s/ledger.json")["budget"]["entries"];
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0]["label"], "impute");
  EXPECT_DOUBLE_EQ(entries[0]["epsilon"].get<double>(), 0.5);
  EXPECT_EQ(entries[1]["label"], "generate");
  EXPECT_DOUBLE_EQ(entries[1]["epsilon"].get<double>(), 0.5);
}

TEST_F(CliTest, SynthesizeErrors) {
  EXPECT_EQ(Run({"synthesize", "--input", Path("data.csv"), "--schema",
                 Path("schema.json"), "--method", "nonsense", "--output",
                 Path("s")}),
            kExitUsage);
  EXPECT_EQ(Run({"synthesize", "--input", Path("data.csv"), "--schema",
                 Path("schema.json"), "--method", "kamino", "--epsilon", "-1",
                 "--output", Path("s")}),
            kExitUsage);

  std::string csv = "a,b,c,d,e\n";
  for (int i = 0; i < 20; ++i) csv += i % 2 ? "x,,1,u,s\n" : "y,p,,v,t\n";
  Write("holes.csv", csv);
  EXPECT_EQ(Run({"synthesize", "--input", Path("holes.csv"), "--schema",
                 Path("schema.json"), "--method", "complete-row:privbayes",
                 "--output", Path("s")}),
            kExitRuntime);
  EXPECT_NE(err_.str().find("no complete rows"), std::string::npos);
}

TEST_F(CliTest, SynthesizeFromConfig) {
  Write("cfg.json",
        R"({"method": "complete_row", "inner": "kamino", "epsilon": 2})");
  ASSERT_EQ(Run({"synthesize", "--input", Path("data.csv"), "--schema",
                 Path("schema.json"), "--config", Path("cfg.json"), "--seed",
                 "5", "--output", Path("s")}),
            kExitOk)
      << err_.str();
  const nlohmann::json m = ReadJson("s/manifest.json");
  EXPECT_EQ(m["config"]["seed"], 5);
  EXPECT_EQ(ReadJson("s/ledger.json")["budget"]["epsilon"], 2.0);
}

TEST_F(CliTest, AmplifyWorkedExamples) {
  Write("phi.json", R"({"attributes": ["A", "B", "C", "D"],
                        "phi": [0.25, 0.0, 0.25, 0.25]})");
  Write("q4.json", R"({"queries": [
    {"attrs": ["A"], "epsilon": 0.25}, {"attrs": ["B"], "epsilon": 0.25},
    {"attrs": ["C"], "epsilon": 0.25}, {"attrs": ["C", "D"], "epsilon": 0.25}]})");
  Write("q3.json", R"({"queries": [
    {"attrs": [0], "epsilon": 1}, {"attrs": [1], "epsilon": 1},
    {"attrs": [2, 3], "epsilon": 1}]})");
  Write("qc.json", R"({"queries": [
    {"attrs": [0], "epsilon": 0.25}, {"attrs": [1], "epsilon": 0.25},
    {"attrs": [2], "epsilon": 0.25}, {"attrs": [3], "epsilon": 0.25}]})");
  const auto multiplier = [&](const std::string& q, const std::string& search,
                              const std::string& out) {
    EXPECT_EQ(Run({"amplify", "--queries", Path(q), "--phi", Path("phi.json"),
                   "--search", search, "--mode", "linear", "--output",
                   Path(out)}),
              kExitOk)
        << err_.str();
    const nlohmann::json plan = ReadJson(out + "/plan.json")["plans"]["linear"];
    return plan["reported_epsilon"].get<double>() /
           plan["total_epsilon"].get<double>();
  };
  EXPECT_NEAR(multiplier("q4.json", "exact", "p4"), 0.8125, 1e-12);
  EXPECT_NEAR(multiplier("q3.json", "exact", "p3"), 0.770833, 1e-6);
  EXPECT_NEAR(multiplier("qc.json", "columnwise", "pc"), 0.9375, 1e-12);
}

TEST_F(CliTest, AmplifyGuardAndModes) {
  Write("phi.json", R"({"phi": {"A": 0.2, "B": 0.4}})");
  Write("q.json", R"({"queries": [{"attrs": ["A", "B"], "epsilon": 1}]})");
  ASSERT_EQ(Run({"amplify", "--queries", Path("q.json"), "--phi",
                 Path("phi.json"), "--mode", "both", "--output", Path("p")}),
            kExitOk)
      << err_.str();
  const nlohmann::json plans = ReadJson("p/plan.json")["plans"];
  EXPECT_NEAR(plans["linear"]["reported_epsilon"].get<double>(), 0.48, 1e-12);
  EXPECT_NEAR(plans["exact"]["reported_epsilon"].get<double>(),
              std::log1p(0.48 * std::expm1(1.0)), 1e-12);

  ASSERT_EQ(Run({"amplify", "--queries", Path("q.json"), "--phi",
                 Path("phi.json"), "--mechanism", "mnar", "--output",
                 Path("m")}),
            kExitOk);
  const nlohmann::json m = ReadJson("m/plan.json");
  EXPECT_EQ(m["guard"]["decision"], "no_amplification");
  EXPECT_DOUBLE_EQ(m["plans"]["linear"]["reported_epsilon"].get<double>(), 1.0);

  EXPECT_EQ(Run({"amplify", "--queries", Path("q.json"), "--phi",
                 Path("phi.json"), "--mode", "sideways"}),
            kExitUsage);
}

TEST_F(CliTest, AmplifyPhiFromMask) {
  Write("mask.csv", "A,B\n1,0\n0,0\n1,1\n0,0\n");
  Write("q.json", R"({"queries": [{"attrs": ["A", "B"], "epsilon": 1}]})");
  ASSERT_EQ(Run({"amplify", "--queries", Path("q.json"), "--phi",
                 Path("mask.csv"), "--output", Path("p")}),
            kExitOk)
      << err_.str();
  const nlohmann::json j = ReadJson("p/plan.json");
  EXPECT_EQ(j["phi"], nlohmann::json({0.5, 0.25}));
  EXPECT_NEAR(j["plans"]["linear"]["reported_epsilon"].get<double>(), 0.375,
              1e-12);
}

TEST_F(CliTest, EvaluateSelfIsZero) {
  ASSERT_EQ(Run({"evaluate", "--real", Path("data.csv"), "--synthetic",
                 Path("data.csv"), "--schema", Path("schema.json"), "--kway",
                 "1,2", "--f1", "--targets", "a,d", "--reps", "3", "--seed",
                 "1", "--output", Path("ev")}),
            kExitOk)
      << err_.str();
  const nlohmann::json r = ReadJson("ev/report.json");
  EXPECT_EQ(r["kway"]["1"]["mean"], 0.0);
  EXPECT_EQ(r["kway"]["2"]["mean"], 0.0);
  EXPECT_EQ(r["kway"]["1"]["values"].size(), 3u);
  EXPECT_EQ(r["f1"]["values"].size(), 3u);
  EXPECT_EQ(r["reps"], 3);
  EXPECT_EQ(Read("ev/report.csv").rfind("metric,key,value\n", 0), 0u);
}

TEST_F(CliTest, EvaluateErrors) {
  EXPECT_EQ(Run({"evaluate", "--real", Path("data.csv"), "--synthetic",
                 Path("data.csv"), "--schema", Path("schema.json"), "--kway",
                 "0"}),
            kExitUsage);
  EXPECT_EQ(Run({"evaluate", "--real", Path("data.csv"), "--synthetic",
                 Path("data.csv"), "--schema", Path("schema.json"), "--f1",
                 "--targets", "zz"}),
            kExitUsage);
}

TEST_F(CliTest, AccountantMisgan) {
  ASSERT_EQ(Run({"accountant", "misgan", "--sigma", "1", "--steps", "10",
                 "--generator-interval", "1", "--batch", "100", "--data-size",
                 "100", "--alphas", "2"}),
            kExitOk)
      << err_.str();
  const nlohmann::json j = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(j["curve"]["values"][0].get<double>(), 5.0, 1e-12);
}

TEST_F(CliTest, AccountantConvertZeroCurve) {
  nlohmann::json curve;
  for (int a = 2; a <= 64; ++a) {
    curve["orders"].push_back(a);
    curve["values"].push_back(0.0);
  }
  Write("curve.json", curve.dump());
  ASSERT_EQ(Run({"accountant", "convert", "--curve-file", Path("curve.json"),
                 "--delta", "1e-5", "--output", Path("acct")}),
            kExitOk)
      << err_.str();
  EXPECT_NEAR(ReadJson("acct/accountant.json")["epsilon"].get<double>(),
              0.18274, 1e-4);
  EXPECT_TRUE(fs::exists(Path("acct/manifest.json")));
}

TEST_F(CliTest, AccountantSgmAndSearch) {
  EXPECT_EQ(Run({"accountant", "sgm", "--sigma", "1", "--rate", "1.1"}),
            kExitUsage);
  ASSERT_EQ(Run({"accountant", "sgm", "--sigma", "2", "--rate", "0.1",
                 "--sensitivity", "2", "--alpha-max", "8", "--form", "collapsed"}),
            kExitOk);
  EXPECT_EQ(nlohmann::json::parse(out_.str())["curve"]["orders"].size(), 7u);
  ASSERT_EQ(Run({"accountant", "sigma-search", "--target-epsilon", "5",
                 "--steps", "100", "--generator-interval", "5", "--batch", "64",
                 "--data-size", "10000"}),
            kExitOk)
      << err_.str();
  const nlohmann::json j = nlohmann::json::parse(out_.str());
  EXPECT_LE(j["epsilon"].get<double>(), 5.0);
}

TEST_F(CliTest, Bench) {
  ASSERT_EQ(Run({"bench", "--input", Path("data.csv"), "--schema",
                 Path("schema.json"), "--methods",
                 "privbayese,complete-row:privbayes", "--rates", "0.1,0.2",
                 "--epsilons", "1,inf", "--reps", "2", "--threads", "3",
                 "--output", Path("b")}),
            kExitOk)
      << err_.str();
  const std::string csv = Read("b/bench.csv");
  EXPECT_EQ(csv.rfind("method,mechanism,rate,epsilon,metric,mean,std\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 2 * 2 * 2);
  EXPECT_NE(csv.find("complete-row:privbayes,mcar-global,0.2,inf,kway2,"),
            std::string::npos);
  EXPECT_TRUE(fs::exists(Path("b/cells/cell_0007.csv")));

  ASSERT_EQ(Run({"bench", "--input", Path("data.csv"), "--schema",
                 Path("schema.json"), "--methods",
                 "privbayese,complete-row:privbayes", "--rates", "0.1,0.2",
                 "--epsilons", "1,inf", "--reps", "2", "--threads", "1",
                 "--output", Path("b1")}),
            kExitOk);
  EXPECT_EQ(csv, Read("b1/bench.csv"));

  EXPECT_EQ(Run({"bench", "--input", Path("data.csv"), "--schema",
                 Path("schema.json"), "--methods", "what", "--output",
                 Path("b2")}),
            kExitUsage);
}

TEST(ManifestTest, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(MethodTest, Parse) {
  auto m = ParseMethod("impute-first:kamino:0.25:kamino-i");
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(m->wrapper, Wrapper::kImputeFirst);
  EXPECT_EQ(m->imputer, ImputerKind::kKamino);
  EXPECT_EQ(m->generator, Generator::kKaminoI);
  EXPECT_DOUBLE_EQ(m->split_fraction, 0.25);
  EXPECT_FALSE(ParseMethod("complete-row").ok());
  EXPECT_FALSE(ParseMethod("impute-first:mean:x:kamino").ok());
  EXPECT_EQ(*ParseEpsilon("inf"), kInfiniteEpsilon);
  EXPECT_FALSE(ParseEpsilon("0").ok());
}

}  // namespace
}  // namespace missdp
