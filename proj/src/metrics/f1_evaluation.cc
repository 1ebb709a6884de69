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

#include "missdp/metrics/f1_evaluation.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "missdp/dpcore/random.h"

namespace missdp {
namespace {

int CellCode(const Dataset& d, int64_t i, int j) {
  const AttributeSpec& a = d.schema().attribute(j);
  return a.is_categorical() ? d.code(i, j) : a.BinOf(d.value(i, j));
}

std::vector<int64_t> SplitRows(int64_t rows, double fraction, Rng& rng) {
  const int64_t take = static_cast<int64_t>(
      std::llround(fraction * static_cast<double>(rows)));
  std::vector<int64_t> picked = SampleWithoutReplacement(rng, rows, take);
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::vector<int64_t> WithTarget(const Dataset& d, std::vector<int64_t> rows,
                                int target) {
  std::erase_if(rows, [&](int64_t r) { return d.is_missing(r, target); });
  return rows;
}

}  // namespace

uint8_t TargetBinarizer::Label(const Dataset& d, int64_t row) const {
  if (categorical) return d.code(row, attr) == positive_code ? 1 : 0;
  return d.value(row, attr) > median ? 1 : 0;
}

absl::StatusOr<TargetBinarizer> MakeBinarizer(const Dataset& real, int attr) {
  if (attr < 0 || attr >= real.cols()) {
    return absl::InvalidArgumentError(
        absl::StrCat("target index ", attr, " out of range"));
  }
  TargetBinarizer b;
  b.attr = attr;
  const AttributeSpec& a = real.schema().attribute(attr);
  b.categorical = a.is_categorical();
  if (b.categorical) {
    std::vector<int64_t> counts(a.cardinality(), 0);
    for (int64_t i = 0; i < real.rows(); ++i) {
      if (!real.is_missing(i, attr)) ++counts[real.code(i, attr)];
    }
    b.positive_code = static_cast<int>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    return b;
  }
  std::vector<double> v;
  for (int64_t i = 0; i < real.rows(); ++i) {
    if (!real.is_missing(i, attr)) v.push_back(real.value(i, attr));
  }
  if (v.empty()) {
    return absl::FailedPreconditionError(
        absl::StrCat("target ", a.name(), " has no observed values"));
  }
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  b.median = v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  return b;
}

Featurizer Featurizer::Create(const Dataset& real, int target) {
  Featurizer f;
  f.target_ = target;
  const Schema& s = real.schema();
  f.offset_.assign(s.size(), -1);
  f.fill_.assign(s.size(), 0);
  for (int j = 0; j < s.size(); ++j) {
    if (j == target) continue;
    f.offset_[j] = f.width_;
    const AttributeSpec& a = s.attribute(j);
    f.width_ += a.cardinality();
    if (a.is_categorical()) {
      std::vector<int64_t> counts(a.cardinality(), 0);
      for (int64_t i = 0; i < real.rows(); ++i) {
        if (!real.is_missing(i, j)) ++counts[real.code(i, j)];
      }
      f.fill_[j] = static_cast<int>(
          std::max_element(counts.begin(), counts.end()) - counts.begin());
    } else {
      double sum = 0.0;
      int64_t n = 0;
      for (int64_t i = 0; i < real.rows(); ++i) {
        if (!real.is_missing(i, j)) {
          sum += real.value(i, j);
          ++n;
        }
      }
      const double mean = n > 0 ? sum / static_cast<double>(n)
                                : 0.5 * (a.range().min + a.range().max);
      f.fill_[j] = a.BinOf(mean);
    }
  }
  return f;
}

FeatureMatrix Featurizer::Encode(const Dataset& d,
                                 std::span<const int64_t> rows) const {
  FeatureMatrix x;
  x.rows = static_cast<int64_t>(rows.size());
  x.cols = width_;
  x.values.assign(static_cast<size_t>(x.rows) * width_, 0.0);
  for (int64_t r = 0; r < x.rows; ++r) {
    double* out = x.values.data() + r * width_;
    for (int j = 0; j < d.cols(); ++j) {
      if (offset_[j] < 0) continue;
      const int code = d.is_missing(rows[r], j) ? fill_[j]
                                                : CellCode(d, rows[r], j);
      out[offset_[j] + code] = 1.0;
    }
  }
  return x;
}

absl::StatusOr<F1Result> F1Evaluation(const Dataset& real, const Dataset& synth,
                                      std::span<const int> targets,
                                      uint64_t seed) {
  if (!(real.schema() == synth.schema())) {
    return absl::InvalidArgumentError("datasets have different schemas");
  }
  if (targets.empty()) {
    return absl::InvalidArgumentError("target set is empty");
  }
  F1Result result;
  double total = 0.0;
  int scored = 0;
  for (size_t t = 0; t < targets.size(); ++t) {
    const int target = targets[t];
    auto binarizer = MakeBinarizer(real, target);
    if (!binarizer.ok()) return binarizer.status();
    const std::string& name = real.schema().attribute(target).name();

    Rng rng = MakeRng(seed, 0x6631000 + t);
    const auto train =
        WithTarget(synth, SplitRows(synth.rows(), 0.7, rng), target);
    const auto test = WithTarget(real, SplitRows(real.rows(), 0.3, rng), target);
    std::vector<uint8_t> y_train, y_test;
    for (int64_t r : train) y_train.push_back(binarizer->Label(synth, r));
    for (int64_t r : test) y_test.push_back(binarizer->Label(real, r));
    const auto classes = [](const std::vector<uint8_t>& y) {
      const auto pos = std::count(y.begin(), y.end(), 1);
      return (pos > 0 ? 1 : 0) + (pos < static_cast<long>(y.size()) ? 1 : 0);
    };
    if (classes(y_train) < 2 || classes(y_test) < 2) {
      result.notes.push_back(absl::StrCat(
          "target ", name, " skipped: single class in ",
          classes(y_train) < 2 ? "synthetic training" : "real test", " rows"));
      continue;
    }

    const Featurizer features = Featurizer::Create(real, target);
    const FeatureMatrix x_train = features.Encode(synth, train);
    const FeatureMatrix x_test = features.Encode(real, test);
    for (auto& model : BuiltinClassifiers()) {
      model->Fit(x_train, y_train);
      std::vector<uint8_t> pred(x_test.rows);
      for (int64_t i = 0; i < x_test.rows; ++i) {
        pred[i] = model->Predict(x_test.row(i));
      }
      const double f1 = F1Score(y_test, pred);
      result.entries.push_back(F1Entry{target, name, model->name(), f1});
      total += f1;
      ++scored;
    }
  }
  if (scored == 0) {
    return absl::FailedPreconditionError(
        "every target was skipped: no two-class target to evaluate");
  }
  result.average = total / scored;
  return result;
}

absl::StatusOr<double> F1Average(const Dataset& real, const Dataset& synth,
                                 std::span<const int> targets, uint64_t seed) {
  auto r = F1Evaluation(real, synth, targets, seed);
  if (!r.ok()) return r.status();
  return r->average;
}

}  // namespace missdp
