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

#ifndef MISSDP_METRICS_CLASSIFIERS_H_
#define MISSDP_METRICS_CLASSIFIERS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace missdp {

// Dense row-major design matrix of 0/1 features.
struct FeatureMatrix {
  int64_t rows = 0;
  int cols = 0;
  std::vector<double> values;

  std::span<const double> row(int64_t i) const {
    return {values.data() + i * cols, static_cast<size_t>(cols)};
  }
};

class BinaryClassifier {
 public:
  virtual ~BinaryClassifier() = default;
  virtual std::string name() const = 0;
  virtual void Fit(const FeatureMatrix& x, std::span<const uint8_t> y) = 0;
  virtual uint8_t Predict(std::span<const double> row) const = 0;
};

struct LogisticOptions {
  int iterations = 500;
  double step = 0.1;
  double l2 = 1e-4;
};

// Full-batch gradient descent on the mean log loss, zero-initialized.
class LogisticRegression : public BinaryClassifier {
 public:
  explicit LogisticRegression(LogisticOptions options = {})
      : options_(options) {}
  std::string name() const override { return "logistic"; }
  void Fit(const FeatureMatrix& x, std::span<const uint8_t> y) override;
  uint8_t Predict(std::span<const double> row) const override;

  double Probability(std::span<const double> row) const;
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

 private:
  LogisticOptions options_;
  std::vector<double> weights_;
  double bias_ = 0.0;
};

// Greedy Gini tree on binary features. Each split tests feature == 1.
class DecisionTree : public BinaryClassifier {
 public:
  explicit DecisionTree(int max_depth = 4) : max_depth_(max_depth) {}
  std::string name() const override { return "tree"; }
  void Fit(const FeatureMatrix& x, std::span<const uint8_t> y) override;
  uint8_t Predict(std::span<const double> row) const override;

  int depth() const;

 private:
  struct Node {
    int feature = -1;  // -1 for a leaf
    int left = -1;     // feature == 0
    int right = -1;    // feature == 1
    uint8_t label = 0;
  };
  int Build(const FeatureMatrix& x, std::span<const uint8_t> y,
            std::vector<int64_t>& rows, int depth);
  int DepthOf(int node) const;

  int max_depth_;
  std::vector<Node> nodes_;
};

std::vector<std::unique_ptr<BinaryClassifier>> BuiltinClassifiers();

// F1 of the positive class; 0 when there are no true positives.
double F1Score(std::span<const uint8_t> truth, std::span<const uint8_t> pred);

}  // namespace missdp

#endif  // MISSDP_METRICS_CLASSIFIERS_H_
