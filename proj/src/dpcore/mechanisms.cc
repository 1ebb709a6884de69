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

#include "missdp/dpcore/mechanisms.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace missdp {
namespace {

double StandardNormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double GaussianDelta(double epsilon, double sensitivity, double sigma) {
  const double a = sensitivity / (2.0 * sigma);
  const double b = epsilon * sigma / sensitivity;
  return StandardNormalCdf(a - b) - std::exp(epsilon) * StandardNormalCdf(-a - b);
}

}  // namespace

absl::StatusOr<double> LaplaceScale(double sensitivity, double epsilon) {
  if (!(sensitivity > 0.0)) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  if (IsInfinite(epsilon)) return 0.0;
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  return sensitivity / epsilon;
}

absl::Status AddLaplaceNoise(std::span<double> values, double scale, Rng& rng) {
  if (scale == 0.0) return absl::OkStatus();
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive, got ", scale));
  }
  for (double& v : values) v += SampleLaplace(rng, scale);
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> LaplaceMechanism(
    std::span<const double> values, double sensitivity, double epsilon,
    Rng& rng) {
  auto scale = LaplaceScale(sensitivity, epsilon);
  if (!scale.ok()) return scale.status();
  std::vector<double> out(values.begin(), values.end());
  if (auto s = AddLaplaceNoise(out, *scale, rng); !s.ok()) return s;
  return out;
}

absl::StatusOr<double> GaussianSigma(double epsilon, double delta,
                                     double sensitivity) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "classic Gaussian calibration needs epsilon in (0, 1), got ", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (!(sensitivity > 0.0)) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  return sensitivity * std::sqrt(2.0 * std::log(1.25 / delta)) / epsilon;
}

absl::StatusOr<double> AnalyticGaussianSigma(double epsilon, double delta,
                                             double sensitivity) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be finite and positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (!(sensitivity > 0.0)) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  double lo = 0.0;
  double hi = sensitivity;
  while (GaussianDelta(epsilon, sensitivity, hi) > delta) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (GaussianDelta(epsilon, sensitivity, mid) > delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

absl::Status AddGaussianNoise(std::span<double> values, double sigma, Rng& rng) {
  if (sigma == 0.0) return absl::OkStatus();
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError("Gaussian sigma must be positive");
  }
  for (double& v : values) v += sigma * SampleStandardNormal(rng);
  return absl::OkStatus();
}

std::vector<double> ExponentialMechanismProbabilities(
    std::span<const double> scores, double sensitivity, double epsilon) {
  std::vector<double> p(scores.size(), 0.0);
  if (scores.empty()) return p;
  const double best = *std::max_element(scores.begin(), scores.end());
  if (IsInfinite(epsilon)) {
    const size_t arg = std::find(scores.begin(), scores.end(), best) - scores.begin();
    p[arg] = 1.0;
    return p;
  }
  double total = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    p[i] = std::exp(epsilon * (scores[i] - best) / (2.0 * sensitivity));
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

absl::StatusOr<size_t> ExponentialMechanism(std::span<const double> scores,
                                            double sensitivity, double epsilon,
                                            Rng& rng) {
  if (scores.empty()) {
    return absl::InvalidArgumentError("exponential mechanism needs candidates");
  }
  if (!IsInfinite(epsilon)) {
    if (!(epsilon > 0.0)) {
      return absl::InvalidArgumentError("epsilon must be positive");
    }
    if (!(sensitivity > 0.0)) {
      return absl::InvalidArgumentError("sensitivity must be positive");
    }
  }
  if (scores.size() == 1) return size_t{0};
  const std::vector<double> p =
      ExponentialMechanismProbabilities(scores, sensitivity, epsilon);
  if (IsInfinite(epsilon)) {
    return static_cast<size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  }
  return SampleDiscrete(rng, p);
}

double DefaultDelta(int64_t n) {
  const double exponent = std::ceil(std::log10(static_cast<double>(std::max<int64_t>(n, 1))));
  return std::pow(10.0, -(exponent + 1.0));
}

}  // namespace missdp
