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

#include "missdp/metrics/classifiers.h"

#include <algorithm>
#include <cmath>

#include "missdp/kernels/kernels.h"

namespace missdp {
namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Gini(int64_t pos, int64_t total) {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(total);
  return 2.0 * p * (1.0 - p);
}

uint8_t Majority(std::span<const uint8_t> y, const std::vector<int64_t>& rows) {
  int64_t pos = 0;
  for (int64_t r : rows) pos += y[r];
  return 2 * pos > static_cast<int64_t>(rows.size()) ? 1 : 0;
}

}  // namespace

void LogisticRegression::Fit(const FeatureMatrix& x,
                             std::span<const uint8_t> y) {
  const kernels::KernelTable& k = kernels::Active();
  weights_.assign(x.cols, 0.0);
  bias_ = 0.0;
  if (x.rows == 0) return;
  const double inv_n = 1.0 / static_cast<double>(x.rows);
  std::vector<double> grad(x.cols);
  for (int it = 0; it < options_.iterations; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    for (int64_t i = 0; i < x.rows; ++i) {
      const auto row = x.row(i);
      const double g = Sigmoid(k.dot(weights_, row) + bias_) - y[i];
      k.axpy(g, row, grad);
      grad_bias += g;
    }
    for (int j = 0; j < x.cols; ++j) {
      weights_[j] -=
          options_.step * (grad[j] * inv_n + options_.l2 * weights_[j]);
    }
    bias_ -= options_.step * grad_bias * inv_n;
  }
}

double LogisticRegression::Probability(std::span<const double> row) const {
  return Sigmoid(kernels::Active().dot(weights_, row) + bias_);
}

uint8_t LogisticRegression::Predict(std::span<const double> row) const {
  return Probability(row) > 0.5 ? 1 : 0;
}

void DecisionTree::Fit(const FeatureMatrix& x, std::span<const uint8_t> y) {
  nodes_.clear();
  std::vector<int64_t> rows(x.rows);
  for (int64_t i = 0; i < x.rows; ++i) rows[i] = i;
  Build(x, y, rows, 0);
}

int DecisionTree::Build(const FeatureMatrix& x, std::span<const uint8_t> y,
                        std::vector<int64_t>& rows, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{});
  nodes_[id].label = Majority(y, rows);
  const int64_t n = static_cast<int64_t>(rows.size());
  int64_t pos = 0;
  for (int64_t r : rows) pos += y[r];
  if (depth >= max_depth_ || pos == 0 || pos == n) return id;

  const double parent = Gini(pos, n);
  int best = -1;
  double best_impurity = parent - 1e-12;
  std::vector<int64_t> ones(x.cols), ones_pos(x.cols);
  for (int64_t r : rows) {
    const auto row = x.row(r);
    for (int j = 0; j < x.cols; ++j) {
      if (row[j] != 0.0) {
        ++ones[j];
        ones_pos[j] += y[r];
      }
    }
  }
  for (int j = 0; j < x.cols; ++j) {
    if (ones[j] == 0 || ones[j] == n) continue;
    const int64_t zeros = n - ones[j];
    const double impurity =
        (static_cast<double>(ones[j]) * Gini(ones_pos[j], ones[j]) +
         static_cast<double>(zeros) * Gini(pos - ones_pos[j], zeros)) /
        static_cast<double>(n);
    if (impurity < best_impurity) {
      best_impurity = impurity;
      best = j;
    }
  }
  if (best < 0) return id;

  std::vector<int64_t> left, right;
  for (int64_t r : rows) {
    (x.row(r)[best] != 0.0 ? right : left).push_back(r);
  }
  rows.clear();
  rows.shrink_to_fit();
  const int l = Build(x, y, left, depth + 1);
  const int rt = Build(x, y, right, depth + 1);
  nodes_[id].feature = best;
  nodes_[id].left = l;
  nodes_[id].right = rt;
  return id;
}

uint8_t DecisionTree::Predict(std::span<const double> row) const {
  if (nodes_.empty()) return 0;
  int at = 0;
  while (nodes_[at].feature >= 0) {
    at = row[nodes_[at].feature] != 0.0 ? nodes_[at].right : nodes_[at].left;
  }
  return nodes_[at].label;
}

int DecisionTree::DepthOf(int node) const {
  if (nodes_[node].feature < 0) return 0;
  return 1 + std::max(DepthOf(nodes_[node].left), DepthOf(nodes_[node].right));
}

int DecisionTree::depth() const { return nodes_.empty() ? 0 : DepthOf(0); }

std::vector<std::unique_ptr<BinaryClassifier>> BuiltinClassifiers() {
  std::vector<std::unique_ptr<BinaryClassifier>> out;
  out.push_back(std::make_unique<LogisticRegression>());
  out.push_back(std::make_unique<DecisionTree>(4));
  return out;
}

double F1Score(std::span<const uint8_t> truth, std::span<const uint8_t> pred) {
  int64_t tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (pred[i] && truth[i]) ++tp;
    if (pred[i] && !truth[i]) ++fp;
    if (!pred[i] && truth[i]) ++fn;
  }
  if (tp == 0) return 0.0;
  return 2.0 * tp / static_cast<double>(2 * tp + fp + fn);
}

}  // namespace missdp
