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

#include "missdp/dpcore/rdp_accountant.h"

#include <cmath>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <gtest/gtest.h>

#include "missdp/dpcore/random.h"

namespace missdp {
namespace {

using Big = boost::multiprecision::cpp_dec_float_50;

// 50-digit evaluation of Σ_k C(α,k)(1-r)^(α-k) r^k exp(exponent_k).
template <typename Exponent>
Big MomentOracle(int alpha, const Big& r, Exponent exponent) {
  Big sum = 0;
  for (int k = 0; k <= alpha; ++k) {
    Big c = 1;
    for (int i = 1; i <= k; ++i) c = c * (alpha - k + i) / i;
    sum += c * boost::multiprecision::pow(1 - r, alpha - k) *
           boost::multiprecision::pow(r, k) * boost::multiprecision::exp(exponent(k));
  }
  return sum;
}

TEST(SgmRdpTest, FullBatchBranch) {
  EXPECT_EQ(*SgmRdp({.sigma = 1, .rate = 1, .sensitivity = 1}, 2), 1.0);
  for (int alpha = 2; alpha <= 64; ++alpha) {
    for (double s : {0.5, 1.0, 2.0}) {
      for (double sigma : {0.7, 1.0, 3.0}) {
        const SgmParams p{.sigma = sigma, .rate = 1.0, .sensitivity = s};
        const double expected = alpha / (2.0 * (s * sigma) * (s * sigma));
        EXPECT_EQ(*SgmRdp(p, alpha, SgmForm::kCollapsed), expected);
        EXPECT_EQ(*SgmRdp(p, alpha, SgmForm::kLogMoment), expected);
      }
    }
  }
}

TEST(SgmRdpTest, ZeroRate) {
  const SgmParams p{.sigma = 1.3, .rate = 0.0, .sensitivity = 1.0};
  // Published form: the exponent does not depend on k, so the binomial sum
  // collapses to exp((α² - α) / (2 (S σ)²)) for every rate.
  EXPECT_NEAR(*SgmRdp(p, 3, SgmForm::kCollapsed), std::exp(6.0 / (2 * 1.69)), 1e-12);
  EXPECT_EQ(*SgmRdp(p, 3, SgmForm::kLogMoment), 0.0);
}

TEST(SgmRdpTest, MatchesHighPrecisionOracle) {
  const SgmParams p{.sigma = 2.0, .rate = 0.1, .sensitivity = 2.0};
  const Big scale = Big(2) * 16;  // 2 (S σ)^2
  const Big collapsed = MomentOracle(4, Big("0.1"), [&](int) { return Big(12) / scale; });
  const Big moment = MomentOracle(4, Big("0.1"), [&](int k) { return Big(k * k - k) / scale; });
  const double log_moment = static_cast<double>(boost::multiprecision::log(moment) / 3);
  EXPECT_NEAR(*SgmRdp(p, 4, SgmForm::kCollapsed), static_cast<double>(collapsed), 1e-13);
  EXPECT_NEAR(*SgmRdp(p, 4, SgmForm::kLogMoment), log_moment, 1e-14);
}

TEST(SgmRdpTest, LogSpaceBinomialsAboveForty) {
  const SgmParams p{.sigma = 1.5, .rate = 0.01, .sensitivity = 1.0};
  for (int alpha : {39, 41, 50, 64}) {
    const Big scale = Big(2) * Big("2.25");
    const Big moment = MomentOracle(alpha, Big("0.01"),
                                    [&](int k) { return Big(k * k - k) / scale; });
    const double expected =
        static_cast<double>(boost::multiprecision::log(moment) / (alpha - 1));
    EXPECT_NEAR(*SgmRdp(p, alpha), expected, 1e-10 * std::max(1.0, expected)) << alpha;
  }
}

TEST(SgmRdpTest, RejectsInvalidInput) {
  EXPECT_FALSE(SgmRdp({.sigma = 1, .rate = 0.5, .sensitivity = 1}, 1).ok());
  EXPECT_FALSE(SgmRdp({.sigma = 1, .rate = 1.1, .sensitivity = 1}, 2).ok());
  EXPECT_FALSE(SgmRdp({.sigma = 0, .rate = 0.5, .sensitivity = 1}, 2).ok());
}

TEST(MisganRdpTest, FullBatchTenGeneratorUpdates) {
  // 2 * 10 * 2 / (2 * 2^2 * 1^2) = 5.
  const MisganAccountingParams p{.steps = 10, .generator_interval = 1,
                                 .batch = 100, .data_size = 100, .sigma = 1.0};
  EXPECT_DOUBLE_EQ(*MisganTotalRdp(p, 2), 5.0);
  EXPECT_DOUBLE_EQ(*MisganTotalRdp(p, 2, SgmForm::kCollapsed), 5.0);
}

TEST(MisganRdpTest, OneGeneratorUpdateDoublesSgmCost) {
  const MisganAccountingParams p{.steps = 7, .generator_interval = 7,
                                 .batch = 10, .data_size = 1000, .sigma = 1.2};
  const SgmParams sgm{.sigma = 1.2, .rate = 0.01, .sensitivity = 2.0};
  for (int alpha : {2, 8, 32}) {
    EXPECT_DOUBLE_EQ(*MisganTotalRdp(p, alpha), 2.0 * *SgmRdp(sgm, alpha));
  }
}

TEST(MisganRdpTest, LinearInStepsAndCeilsPartialIntervals) {
  MisganAccountingParams p{.steps = 40, .generator_interval = 5,
                           .batch = 64, .data_size = 6400, .sigma = 1.1};
  const double base = *MisganTotalRdp(p, 6);
  p.steps = 80;
  EXPECT_NEAR(*MisganTotalRdp(p, 6), 2.0 * base, 1e-12 * base);
  p.steps = 41;  // ceil(41 / 5) = 9 updates
  EXPECT_NEAR(*MisganTotalRdp(p, 6), base * 9.0 / 8.0, 1e-12 * base);
  p.batch = 10'000;
  EXPECT_FALSE(MisganTotalRdp(p, 6).ok());
}

TEST(RdpToDpTest, ZeroCurve) {
  RdpCurve zero{OrderGrid(2, 64), std::vector<double>(63, 0.0)};
  EXPECT_NEAR(*RdpToDp(zero, 1e-5), std::log(1e5) / 63, 1e-12);
  EXPECT_NEAR(*RdpToDp(zero, 1e-5), 0.18274, 1e-4);
}

TEST(RdpToDpTest, SingleOrder) {
  RdpCurve c{{2}, {1.0}};
  EXPECT_NEAR(*RdpToDp(c, std::exp(-1.0)), 2.0, 1e-12);
  EXPECT_FALSE(RdpToDp(c, 0.0).ok());
  EXPECT_FALSE(RdpToDp(RdpCurve{}, 0.1).ok());
}

TEST(RdpToDpTest, MonotoneInCurveAndDelta) {
  Rng rng = MakeRng(17);
  const auto orders = OrderGrid(2, 32);
  for (int trial = 0; trial < 100; ++trial) {
    RdpCurve a{orders, {}}, bump{orders, {}};
    for (size_t i = 0; i < orders.size(); ++i) {
      a.values.push_back(UniformUnit(rng) * 5);
      bump.values.push_back(UniformUnit(rng) * 2);
    }
    const RdpCurve b = *a.Compose(bump);
    EXPECT_LE(*RdpToDp(a, 1e-5), *RdpToDp(b, 1e-5));
    EXPECT_GE(*RdpToDp(a, 1e-6), *RdpToDp(a, 1e-5));
  }
}

TEST(RdpCurveTest, CompositionIsPointwise) {
  const auto orders = OrderGrid(2, 10);
  auto a = *SgmRdpCurve({.sigma = 1.0, .rate = 0.05, .sensitivity = 1.0}, orders);
  auto b = *SgmRdpCurve({.sigma = 2.0, .rate = 0.2, .sensitivity = 1.0}, orders);
  auto c = *a.Compose(b);
  for (size_t i = 0; i < orders.size(); ++i) {
    EXPECT_EQ(c.values[i], a.values[i] + b.values[i]);
  }
  EXPECT_FALSE(a.Compose(RdpCurve{{2}, {0.0}}).ok());
}

TEST(SigmaForBudgetTest, MonotoneAndSelfConsistent) {
  const MisganAccountingParams p{.steps = 1000, .generator_interval = 5,
                                 .batch = 64, .data_size = 30000, .sigma = 0};
  const auto orders = OrderGrid();
  double previous = std::numeric_limits<double>::infinity();
  for (double target : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    auto sigma = SigmaForBudget(target, 1e-5, p, orders);
    ASSERT_TRUE(sigma.ok()) << sigma.status();
    EXPECT_LE(*sigma, previous);
    previous = *sigma;
    MisganAccountingParams q = p;
    q.sigma = *sigma;
    EXPECT_LE(*RdpToDp(*MisganRdpCurve(q, orders), 1e-5), target);
    q.sigma = *sigma - 2e-3;
    EXPECT_GT(*RdpToDp(*MisganRdpCurve(q, orders), 1e-5), target);
  }
}

TEST(SigmaForBudgetTest, UnattainableTarget) {
  const MisganAccountingParams p{.steps = 100, .generator_interval = 1,
                                 .batch = 10, .data_size = 100, .sigma = 0};
  auto s = SigmaForBudget(1e-9, 1e-5, p, OrderGrid());
  EXPECT_FALSE(s.ok());
  EXPECT_EQ(s.status().code(), absl::StatusCode::kOutOfRange);
}

}  // namespace
}  // namespace missdp
