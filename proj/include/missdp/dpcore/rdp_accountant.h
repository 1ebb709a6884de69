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

// Rényi-DP accounting for the sampled Gaussian mechanism and for the
// two-generator GAN training schedule (one noisy discriminator-to-generator
// gradient release per generator every `generator_interval` steps).

#ifndef MISSDP_DPCORE_RDP_ACCOUNTANT_H_
#define MISSDP_DPCORE_RDP_ACCOUNTANT_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"

namespace missdp {

struct RdpCurve {
  std::vector<int> orders;  // ascending, each >= 2
  std::vector<double> values;

  // Pointwise sum; both curves must share the order grid.
  absl::StatusOr<RdpCurve> Compose(const RdpCurve& other) const;
};

// {first, ..., last}
std::vector<int> OrderGrid(int first = 2, int last = 64);

struct SgmParams {
  double sigma = 1.0;        // noise multiplier
  double rate = 1.0;         // sampling probability
  double sensitivity = 1.0;  // S_f
};

enum class SgmForm {
  // Moment expression with a k-independent exponent:
  //   r = 1:      α / (2 (S σ)²)
  //   0 <= r < 1: Σ_k C(α,k) (1-r)^(α-k) r^k exp((α² - α) / (2 (S σ)²))
  kCollapsed,
  // Standard integer-order SGM bound,
  //   (1/(α-1)) ln Σ_k C(α,k) (1-r)^(α-k) r^k exp((k² - k) / (2 (S σ)²)),
  // which equals α / (2 (S σ)²) at r = 1.
  kLogMoment,
};

absl::StatusOr<double> SgmRdp(const SgmParams& p, int alpha,
                              SgmForm form = SgmForm::kLogMoment);
absl::StatusOr<RdpCurve> SgmRdpCurve(const SgmParams& p,
                                     const std::vector<int>& orders,
                                     SgmForm form = SgmForm::kLogMoment);

struct MisganAccountingParams {
  int64_t steps = 1;               // T
  int64_t generator_interval = 1;  // T_G
  int64_t batch = 1;               // B
  int64_t data_size = 1;           // |D|
  double sigma = 1.0;
};

// Clipping bound C = 1 gives discriminator-gradient sensitivity 2.
inline constexpr double kMisganSensitivity = 2.0;

// 2 * ceil(T / T_G) * SgmRdp(σ, r = B/|D|, S = 2).
absl::StatusOr<double> MisganTotalRdp(const MisganAccountingParams& p, int alpha,
                                      SgmForm form = SgmForm::kLogMoment);
absl::StatusOr<RdpCurve> MisganRdpCurve(const MisganAccountingParams& p,
                                        const std::vector<int>& orders,
                                        SgmForm form = SgmForm::kLogMoment);

// min over the curve's orders of R(α) + ln(1/δ) / (α - 1).
absl::StatusOr<double> RdpToDp(const RdpCurve& curve, double delta);

// Smallest σ (to within 1e-3) in (0, 1e4] whose training schedule meets the
// target epsilon at `delta`. `p.sigma` is ignored.
absl::StatusOr<double> SigmaForBudget(double target_epsilon, double delta,
                                      const MisganAccountingParams& p,
                                      const std::vector<int>& orders,
                                      SgmForm form = SgmForm::kLogMoment);

}  // namespace missdp

#endif  // MISSDP_DPCORE_RDP_ACCOUNTANT_H_
