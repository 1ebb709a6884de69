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

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace missdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kDirectBinomialLimit = 40;
constexpr double kMaxSigma = 1e4;
constexpr double kSigmaTolerance = 1e-3;

double LogBinomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double Binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double LogAddExp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

absl::Status Validate(const SgmParams& p, int alpha) {
  if (alpha < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("RDP order must be an integer >= 2, got ", alpha));
  }
  if (!(p.sigma > 0.0)) {
    return absl::InvalidArgumentError("sigma must be positive");
  }
  if (!(p.rate >= 0.0 && p.rate <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sampling rate must lie in [0, 1], got ", p.rate));
  }
  if (!(p.sensitivity > 0.0)) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  return absl::OkStatus();
}

// ln Σ_k C(α,k) (1-r)^(α-k) r^k exp(e_k) where e_k = exponent(k).
template <typename Exponent>
double LogMomentSum(int alpha, double r, Exponent exponent) {
  if (r == 0.0) return exponent(0);
  if (r == 1.0) return exponent(alpha);
  const double lr = std::log(r);
  const double l1r = std::log1p(-r);
  double acc = -kInf;
  for (int k = 0; k <= alpha; ++k) {
    const double lc = alpha > kDirectBinomialLimit
                          ? LogBinomial(alpha, k)
                          : std::log(Binomial(alpha, k));
    acc = LogAddExp(acc, lc + (alpha - k) * l1r + k * lr + exponent(k));
  }
  return acc;
}

}  // namespace

absl::StatusOr<RdpCurve> RdpCurve::Compose(const RdpCurve& other) const {
  if (orders != other.orders) {
    return absl::InvalidArgumentError("RDP curves use different order grids");
  }
  RdpCurve out = *this;
  for (size_t i = 0; i < values.size(); ++i) out.values[i] += other.values[i];
  return out;
}

std::vector<int> OrderGrid(int first, int last) {
  std::vector<int> orders;
  for (int a = first; a <= last; ++a) orders.push_back(a);
  return orders;
}

absl::StatusOr<double> SgmRdp(const SgmParams& p, int alpha, SgmForm form) {
  if (auto s = Validate(p, alpha); !s.ok()) return s;
  const double scale = 2.0 * (p.sensitivity * p.sigma) * (p.sensitivity * p.sigma);
  if (p.rate == 1.0) return alpha / scale;
  if (form == SgmForm::kCollapsed) {
    const double e = (static_cast<double>(alpha) * alpha - alpha) / scale;
    return std::exp(LogMomentSum(alpha, p.rate, [&](int) { return e; }));
  }
  const double log_moment = LogMomentSum(alpha, p.rate, [&](int k) {
    return (static_cast<double>(k) * k - k) / scale;
  });
  return std::max(0.0, log_moment / (alpha - 1));
}

absl::StatusOr<RdpCurve> SgmRdpCurve(const SgmParams& p,
                                     const std::vector<int>& orders,
                                     SgmForm form) {
  RdpCurve curve;
  curve.orders = orders;
  for (int a : orders) {
    auto v = SgmRdp(p, a, form);
    if (!v.ok()) return v.status();
    curve.values.push_back(*v);
  }
  return curve;
}

absl::StatusOr<double> MisganTotalRdp(const MisganAccountingParams& p, int alpha,
                                      SgmForm form) {
  if (p.steps < 1 || p.generator_interval < 1 || p.batch < 1 || p.data_size < 1) {
    return absl::InvalidArgumentError(
        "steps, generator interval, batch and data size must be positive");
  }
  if (p.batch > p.data_size) {
    return absl::InvalidArgumentError("batch size exceeds the data size");
  }
  const double releases =
      2.0 * static_cast<double>((p.steps + p.generator_interval - 1) /
                                p.generator_interval);
  SgmParams sgm;
  sgm.sigma = p.sigma;
  sgm.rate = static_cast<double>(p.batch) / static_cast<double>(p.data_size);
  sgm.sensitivity = kMisganSensitivity;
  auto per_release = SgmRdp(sgm, alpha, form);
  if (!per_release.ok()) return per_release.status();
  return releases * *per_release;
}

absl::StatusOr<RdpCurve> MisganRdpCurve(const MisganAccountingParams& p,
                                        const std::vector<int>& orders,
                                        SgmForm form) {
  RdpCurve curve;
  curve.orders = orders;
  for (int a : orders) {
    auto v = MisganTotalRdp(p, a, form);
    if (!v.ok()) return v.status();
    curve.values.push_back(*v);
  }
  return curve;
}

absl::StatusOr<double> RdpToDp(const RdpCurve& curve, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (curve.orders.empty() || curve.orders.size() != curve.values.size()) {
    return absl::InvalidArgumentError("RDP curve is empty or malformed");
  }
  double best = kInf;
  for (size_t i = 0; i < curve.orders.size(); ++i) {
    if (curve.orders[i] < 2) {
      return absl::InvalidArgumentError("RDP orders must be >= 2");
    }
    best = std::min(best, curve.values[i] + std::log(1.0 / delta) /
                                                (curve.orders[i] - 1));
  }
  return best;
}

absl::StatusOr<double> SigmaForBudget(double target_epsilon, double delta,
                                      const MisganAccountingParams& p,
                                      const std::vector<int>& orders,
                                      SgmForm form) {
  if (!(target_epsilon > 0.0) || !std::isfinite(target_epsilon)) {
    return absl::InvalidArgumentError("target epsilon must be finite and positive");
  }
  auto epsilon_at = [&](double sigma) -> absl::StatusOr<double> {
    MisganAccountingParams q = p;
    q.sigma = sigma;
    auto curve = MisganRdpCurve(q, orders, form);
    if (!curve.ok()) return curve.status();
    return RdpToDp(*curve, delta);
  };
  auto at_cap = epsilon_at(kMaxSigma);
  if (!at_cap.ok()) return at_cap.status();
  if (*at_cap > target_epsilon) {
    return absl::OutOfRangeError(absl::StrCat(
        "target epsilon ", target_epsilon, " is unattainable with sigma <= ",
        kMaxSigma, " (best ", *at_cap, ")"));
  }
  double lo = 0.0;
  double hi = kMaxSigma;
  while (hi - lo > kSigmaTolerance) {
    const double mid = 0.5 * (lo + hi);
    auto eps = epsilon_at(mid);
    if (!eps.ok()) return eps.status();
    if (*eps <= target_epsilon) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace missdp
