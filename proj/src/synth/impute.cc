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

#include "missdp/synth/impute.h"

#include <algorithm>
#include <map>

#include "absl/strings/str_cat.h"
#include "missdp/dpcore/mechanisms.h"

namespace missdp {
namespace {

std::vector<double> ColumnMajorValues(const Dataset& d) {
  std::vector<double> values;
  values.reserve(static_cast<size_t>(d.rows()) * d.cols());
  for (int j = 0; j < d.cols(); ++j) {
    auto col = d.column(j);
    values.insert(values.end(), col.begin(), col.end());
  }
  return values;
}

double UniformValue(const AttributeSpec& a, Rng& rng) {
  if (a.is_categorical()) {
    return static_cast<double>(UniformIndex(rng, a.cardinality()));
  }
  const NumericalRange& r = a.range();
  return r.min + UniformUnit(rng) * (r.max - r.min);
}

Dataset Rebuild(const Dataset& d, std::vector<double> values) {
  auto out = Dataset::Create(d.schema(), d.rows(), std::move(values));
  return *std::move(out);
}

std::vector<double> Normalized(std::vector<double> counts) {
  double total = 0.0;
  for (double& c : counts) {
    c = std::max(c, 0.0);
    total += c;
  }
  if (total <= 0.0) return {};
  for (double& c : counts) c /= total;
  return counts;
}

}  // namespace

absl::StatusOr<ImputerKind> ParseImputerKind(const std::string& name) {
  if (name == "random") return ImputerKind::kRandom;
  if (name == "mean_mode" || name == "mean") return ImputerKind::kMeanMode;
  if (name == "kamino") return ImputerKind::kKamino;
  return absl::InvalidArgumentError(absl::StrCat("unknown imputer \"", name, "\""));
}

std::string ImputerName(ImputerKind kind) {
  switch (kind) {
    case ImputerKind::kRandom:
      return "random";
    case ImputerKind::kMeanMode:
      return "mean_mode";
    case ImputerKind::kKamino:
      return "kamino";
  }
  return "?";
}

ImputeStats ExactImputeStats(const Dataset& d) {
  ImputeStats stats;
  for (int j = 0; j < d.cols(); ++j) {
    const AttributeSpec& a = d.schema().attribute(j);
    ColumnFill fill;
    fill.has_missing = d.MissingCount(j) > 0;
    const int64_t observed = d.rows() - d.MissingCount(j);
    if (observed == 0) {
      fill.uniform_fallback = true;
    } else if (a.is_categorical()) {
      std::vector<double> counts(a.cardinality(), 0.0);
      for (int64_t i = 0; i < d.rows(); ++i) {
        if (!d.is_missing(i, j)) counts[d.code(i, j)] += 1;
      }
      fill.probabilities = Normalized(std::move(counts));
    } else {
      double sum = 0.0;
      for (int64_t i = 0; i < d.rows(); ++i) {
        if (!d.is_missing(i, j)) sum += d.value(i, j);
      }
      fill.mean = sum / static_cast<double>(observed);
    }
    stats.columns.push_back(std::move(fill));
  }
  return stats;
}

absl::StatusOr<ImputeStats> PrivateImputeStats(const Dataset& d, double epsilon,
                                               Rng& rng, BudgetLedger& ledger) {
  if (!(epsilon >= 0)) return absl::InvalidArgumentError("negative epsilon");
  ImputeStats stats;
  int with_missing = 0;
  for (int j = 0; j < d.cols(); ++j) with_missing += d.MissingCount(j) > 0;
  const double per_column = with_missing > 0 ? epsilon / with_missing : 0.0;

  for (int j = 0; j < d.cols(); ++j) {
    const AttributeSpec& a = d.schema().attribute(j);
    ColumnFill fill;
    fill.has_missing = d.MissingCount(j) > 0;
    if (!fill.has_missing) {
      stats.columns.push_back(std::move(fill));
      continue;
    }
    if (per_column <= 0.0) {
      fill.uniform_fallback = true;
      stats.columns.push_back(std::move(fill));
      continue;
    }
    if (auto s = ledger.Spend(absl::StrCat("impute/", a.name()), per_column);
        !s.ok()) {
      return s;
    }
    if (a.is_categorical()) {
      std::vector<double> counts(a.cardinality(), 0.0);
      for (int64_t i = 0; i < d.rows(); ++i) {
        if (!d.is_missing(i, j)) counts[d.code(i, j)] += 1;
      }
      auto scale = LaplaceScale(1.0, per_column);
      if (!scale.ok()) return scale.status();
      if (auto s = AddLaplaceNoise(counts, *scale, rng); !s.ok()) return s;
      fill.probabilities = Normalized(std::move(counts));
      fill.uniform_fallback = fill.probabilities.empty();
    } else {
      const NumericalRange& r = a.range();
      double sum = 0.0, count = 0.0;
      for (int64_t i = 0; i < d.rows(); ++i) {
        if (d.is_missing(i, j)) continue;
        sum += d.value(i, j) - r.min;
        count += 1.0;
      }
      auto sum_scale = LaplaceScale(r.max - r.min, per_column / 2);
      auto count_scale = LaplaceScale(1.0, per_column / 2);
      if (!sum_scale.ok()) return sum_scale.status();
      if (!count_scale.ok()) return count_scale.status();
      sum += *sum_scale > 0 ? SampleLaplace(rng, *sum_scale) : 0.0;
      count += *count_scale > 0 ? SampleLaplace(rng, *count_scale) : 0.0;
      if (count < 1.0) {
        fill.uniform_fallback = true;
      } else {
        fill.mean = r.min + std::clamp(sum / count, 0.0, r.max - r.min);
      }
    }
    stats.columns.push_back(std::move(fill));
  }
  return stats;
}

ImputeResult RandomImpute(const Dataset& d, Rng& rng) {
  if (!d.HasMissing()) return {d, {}};
  std::vector<double> values = ColumnMajorValues(d);
  for (int j = 0; j < d.cols(); ++j) {
    const AttributeSpec& a = d.schema().attribute(j);
    for (int64_t i = 0; i < d.rows(); ++i) {
      if (d.is_missing(i, j)) {
        values[static_cast<size_t>(j) * d.rows() + i] = UniformValue(a, rng);
      }
    }
  }
  return {Rebuild(d, std::move(values)), {}};
}

ImputeResult MeanModeImpute(const Dataset& d, const ImputeStats& stats,
                            Rng& rng) {
  ImputeResult result;
  if (!d.HasMissing()) {
    result.data = d;
    return result;
  }
  std::vector<double> values = ColumnMajorValues(d);
  for (int j = 0; j < d.cols(); ++j) {
    if (d.MissingCount(j) == 0) continue;
    const AttributeSpec& a = d.schema().attribute(j);
    const ColumnFill& fill = stats.columns[j];
    const bool fallback = fill.uniform_fallback ||
                          (a.is_categorical() && fill.probabilities.empty());
    if (fallback) {
      result.warnings.push_back(absl::StrCat(
          "column ", a.name(), " has no usable statistic; imputing uniformly"));
    }
    for (int64_t i = 0; i < d.rows(); ++i) {
      if (!d.is_missing(i, j)) continue;
      double v;
      if (fallback) {
        v = UniformValue(a, rng);
      } else if (a.is_categorical()) {
        v = static_cast<double>(SampleDiscrete(rng, fill.probabilities));
      } else {
        v = fill.mean;
      }
      values[static_cast<size_t>(j) * d.rows() + i] = v;
    }
  }
  result.data = Rebuild(d, std::move(values));
  return result;
}

Dataset StatisticImpute(const Dataset& d, FillStatistic statistic) {
  if (!d.HasMissing()) return d;
  std::vector<double> values = ColumnMajorValues(d);
  for (int j = 0; j < d.cols(); ++j) {
    if (d.MissingCount(j) == 0) continue;
    const AttributeSpec& a = d.schema().attribute(j);
    std::vector<double> observed;
    for (int64_t i = 0; i < d.rows(); ++i) {
      if (!d.is_missing(i, j)) observed.push_back(d.value(i, j));
    }
    double fill = a.is_categorical() ? 0.0 : a.range().min;
    if (!observed.empty()) {
      if (a.is_categorical() || statistic == FillStatistic::kMode) {
        std::map<double, int64_t> freq;
        for (double v : observed) ++freq[v];
        int64_t best = 0;
        for (const auto& [v, c] : freq) {
          if (c > best) best = c, fill = v;
        }
      } else if (statistic == FillStatistic::kMean) {
        double sum = 0.0;
        for (double v : observed) sum += v;
        fill = sum / static_cast<double>(observed.size());
      } else {
        std::sort(observed.begin(), observed.end());
        const size_t m = observed.size() / 2;
        fill = observed.size() % 2 ? observed[m]
                                   : 0.5 * (observed[m - 1] + observed[m]);
      }
    }
    for (int64_t i = 0; i < d.rows(); ++i) {
      if (d.is_missing(i, j)) values[static_cast<size_t>(j) * d.rows() + i] = fill;
    }
  }
  return Rebuild(d, std::move(values));
}

}  // namespace missdp
