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

#include "missdp/missing/inject.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "missdp/dpcore/random.h"
#include "missdp/tabular/marginal.h"

namespace missdp {
namespace {

enum Stream : uint64_t {
  kFeatureStream = 1,
  kWeightStream = 2,
  kTargetStream = 3,
  kPremaskStream = 4,
  kMcarStream = 5,
};

absl::Status CheckProbability(double p, absl::string_view what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat(what, " must lie in [0, 1], got ", p));
  }
  return absl::OkStatus();
}

absl::Status CheckLogistic(double rate, double fraction, int cols) {
  if (auto s = CheckProbability(rate, "rate"); !s.ok()) return s;
  if (!(fraction > 0.0 && fraction < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("feature_fraction must lie in (0, 1), got ", fraction));
  }
  if (cols >= 0 && cols < 2) {
    return absl::InvalidArgumentError("MAR/MNAR need at least 2 attributes");
  }
  return absl::OkStatus();
}

double Sigmoid(double x) {
  return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

// Bias b with mean(sigmoid(logits + b)) = rate.
double FitBias(const std::vector<double>& logits, double rate) {
  double lo = -50.0, hi = 50.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double mean = 0.0;
    for (double z : logits) mean += Sigmoid(z + mid);
    mean /= static_cast<double>(logits.size());
    if (mean < rate) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> Standardized(const Dataset& d, int j) {
  const bool categorical = d.schema().attribute(j).is_categorical();
  std::vector<double> x(static_cast<size_t>(d.rows()));
  for (int64_t i = 0; i < d.rows(); ++i) {
    x[i] = categorical ? static_cast<double>(d.code(i, j)) : d.value(i, j);
  }
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(x.size()));
  for (double& v : x) v = sd > 0 ? (v - mean) / sd : 0.0;
  return x;
}

void McarColumn(Rng& rng, int64_t n, int64_t count, uint8_t* column) {
  for (int64_t i : SampleWithoutReplacement(rng, n, count)) column[i] = 1;
}

std::vector<uint8_t> LogisticMask(const Dataset& d, double rate,
                                  double fraction, uint64_t seed, bool mnar) {
  const int64_t n = d.rows();
  const int k = d.cols();
  std::vector<uint8_t> mask(static_cast<size_t>(n) * k, 0);
  const std::vector<int> features = FeatureAttributes(k, fraction, seed);
  std::vector<bool> is_feature(k, false);
  for (int f : features) is_feature[f] = true;

  std::vector<std::vector<double>> inputs;
  for (int f : features) inputs.push_back(Standardized(d, f));

  Rng weights_rng = MakeRng(seed, kWeightStream);
  Rng target_rng = MakeRng(seed, kTargetStream);
  std::vector<double> logits(static_cast<size_t>(n));
  for (int j = 0; j < k; ++j) {
    if (is_feature[j]) continue;
    std::vector<double> w(features.size());
    for (double& x : w) x = SampleStandardNormal(weights_rng);
    for (int64_t i = 0; i < n; ++i) {
      double z = 0.0;
      for (size_t f = 0; f < features.size(); ++f) z += w[f] * inputs[f][i];
      logits[i] = z;
    }
    double mean = 0.0, var = 0.0;
    for (double z : logits) mean += z;
    mean /= static_cast<double>(n);
    for (double z : logits) var += (z - mean) * (z - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    if (sd > 0) {
      for (double& z : logits) z /= sd;
    }
    const double b = FitBias(logits, rate);
    uint8_t* column = mask.data() + static_cast<size_t>(j) * n;
    for (int64_t i = 0; i < n; ++i) {
      column[i] = UniformUnit(target_rng) < Sigmoid(logits[i] + b) ? 1 : 0;
    }
  }
  if (mnar) {
    Rng premask_rng = MakeRng(seed, kPremaskStream);
    for (int f : features) {
      uint8_t* column = mask.data() + static_cast<size_t>(f) * n;
      for (int64_t i = 0; i < n; ++i) {
        column[i] = UniformUnit(premask_rng) < rate ? 1 : 0;
      }
    }
  }
  return mask;
}

}  // namespace

std::string MechanismName(const MissingSpec& spec) {
  switch (spec.mechanism.index()) {
    case 0:
      return "mcar";
    case 1:
      return "mcar_global";
    case 2:
      return "mar";
    default:
      return "mnar";
  }
}

absl::Status ValidateSpec(const MissingSpec& spec, int cols) {
  if (const auto* m = std::get_if<McarSpec>(&spec.mechanism)) {
    if (cols >= 0 && static_cast<int>(m->phi.size()) != cols) {
      return absl::InvalidArgumentError(absl::StrCat(
          "phi has ", m->phi.size(), " entries for ", cols, " attributes"));
    }
    for (double p : m->phi) {
      if (auto s = CheckProbability(p, "phi"); !s.ok()) return s;
    }
    return absl::OkStatus();
  }
  if (const auto* m = std::get_if<McarGlobalSpec>(&spec.mechanism)) {
    return CheckProbability(m->rate, "rate");
  }
  if (const auto* m = std::get_if<MarSpec>(&spec.mechanism)) {
    return CheckLogistic(m->rate, m->feature_fraction, cols);
  }
  const auto& m = std::get<MnarSpec>(spec.mechanism);
  return CheckLogistic(m.rate, m.feature_fraction, cols);
}

absl::StatusOr<MissingSpec> MissingSpecFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("mechanism") ||
      !j["mechanism"].is_string()) {
    return absl::InvalidArgumentError("missing spec needs a \"mechanism\"");
  }
  MissingSpec spec;
  try {
    spec.seed = j.value("seed", uint64_t{0});
    const std::string kind = j["mechanism"];
    const double fraction = j.value("feature_fraction", 0.5);
    if (kind == "mcar") {
      if (j.contains("phi")) {
        spec.mechanism = McarSpec{j["phi"].get<std::vector<double>>()};
      } else {
        spec.mechanism = McarGlobalSpec{j.at("rate").get<double>()};
      }
    } else if (kind == "mcar_global") {
      spec.mechanism = McarGlobalSpec{j.at("rate").get<double>()};
    } else if (kind == "mar") {
      spec.mechanism = MarSpec{j.at("rate").get<double>(), fraction};
    } else if (kind == "mnar") {
      spec.mechanism = MnarSpec{j.at("rate").get<double>(), fraction};
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown missing mechanism \"", kind, "\""));
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed missing spec: ", e.what()));
  }
  if (auto s = ValidateSpec(spec); !s.ok()) return s;
  return spec;
}

nlohmann::json MissingSpecToJson(const MissingSpec& spec) {
  nlohmann::json j;
  j["mechanism"] = MechanismName(spec);
  j["seed"] = spec.seed;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, McarSpec>) {
          j["phi"] = m.phi;
        } else if constexpr (std::is_same_v<T, McarGlobalSpec>) {
          j["rate"] = m.rate;
        } else {
          j["rate"] = m.rate;
          j["feature_fraction"] = m.feature_fraction;
        }
      },
      spec.mechanism);
  return j;
}

std::vector<int> FeatureAttributes(int cols, double feature_fraction,
                                   uint64_t seed) {
  const int count = std::min(
      cols, static_cast<int>(std::ceil(feature_fraction * cols - 1e-12)));
  Rng rng = MakeRng(seed, kFeatureStream);
  std::vector<int> out;
  for (int64_t f : SampleWithoutReplacement(rng, cols, count)) {
    out.push_back(static_cast<int>(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

absl::StatusOr<Dataset> Inject(const Dataset& d, const MissingSpec& spec) {
  if (auto s = ValidateSpec(spec, d.cols()); !s.ok()) return s;
  if (d.HasMissing()) {
    return absl::FailedPreconditionError(
        "injection expects a dataset without missing cells");
  }
  const int64_t n = d.rows();
  const int k = d.cols();
  if (n == 0) return d;
  std::vector<uint8_t> mask(static_cast<size_t>(n) * k, 0);

  if (const auto* m = std::get_if<McarSpec>(&spec.mechanism)) {
    Rng rng = MakeRng(spec.seed, kMcarStream);
    for (int j = 0; j < k; ++j) {
      const auto count = static_cast<int64_t>(std::llround(m->phi[j] * n));
      McarColumn(rng, n, count, mask.data() + static_cast<size_t>(j) * n);
    }
  } else if (const auto* m = std::get_if<McarGlobalSpec>(&spec.mechanism)) {
    const int64_t cells = n * k;
    const auto count = static_cast<int64_t>(std::llround(m->rate * cells));
    if (count > cells) {
      return absl::InvalidArgumentError("rate exceeds the available cells");
    }
    Rng rng = MakeRng(spec.seed, kMcarStream);
    McarColumn(rng, cells, count, mask.data());
  } else if (const auto* m = std::get_if<MarSpec>(&spec.mechanism)) {
    mask = LogisticMask(d, m->rate, m->feature_fraction, spec.seed, false);
  } else {
    const auto& mn = std::get<MnarSpec>(spec.mechanism);
    mask = LogisticMask(d, mn.rate, mn.feature_fraction, spec.seed, true);
  }
  return d.WithAdditionalMissing(mask);
}

absl::StatusOr<PhiEstimate> EstimatePhi(const Dataset& d) {
  if (d.rows() < 1) return absl::InvalidArgumentError("empty dataset");
  PhiEstimate out;
  out.n = d.rows();
  for (int j = 0; j < d.cols(); ++j) {
    out.phi.push_back(static_cast<double>(d.MissingCount(j)) /
                      static_cast<double>(d.rows()));
  }
  return out;
}

absl::StatusOr<SameRowsResult> InjectWithSameRows(const Dataset& d,
                                                  const MissingSpec& spec,
                                                  int64_t target_complete_rows,
                                                  double step) {
  double* rate = nullptr;
  MissingSpec current = spec;
  if (auto* m = std::get_if<MarSpec>(&current.mechanism)) {
    rate = &m->rate;
  } else if (auto* m = std::get_if<MnarSpec>(&current.mechanism)) {
    rate = &m->rate;
  } else {
    return absl::InvalidArgumentError("same-rows escalation needs MAR or MNAR");
  }
  if (!(step > 0)) return absl::InvalidArgumentError("step must be positive");
  const std::vector<int> all = AllAttributes(d.schema());
  while (true) {
    auto injected = Inject(d, current);
    if (!injected.ok()) return injected.status();
    const int64_t complete = CountCompleteRows(*injected, all);
    if (complete <= target_complete_rows || *rate >= 1.0) {
      return SameRowsResult{*std::move(injected), *rate, complete};
    }
    *rate = std::min(1.0, *rate + step);
  }
}

}  // namespace missdp
