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

#include <algorithm>
#include <cmath>

#include "missdp/kernels/kernels.h"

namespace missdp {
namespace kernels {
namespace {

void OrMaskScalar(std::span<uint8_t> acc, std::span<const uint8_t> mask) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] |= mask[i];
}

void AccumulateIndexScalar(std::span<int32_t> index,
                           std::span<const int32_t> codes, int32_t radix) {
  for (size_t i = 0; i < index.size(); ++i) {
    index[i] = index[i] * radix + codes[i];
  }
}

double MaxAbsDiffScalar(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

// The reductions below keep four partial sums in lane order so that the
// scalar and AVX2 paths add in the same sequence.
double SumAbsDiffScalar(std::span<const double> a, std::span<const double> b) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const size_t n = a.size();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (size_t l = 0; l < 4; ++l) lane[l] += std::fabs(a[i + l] - b[i + l]);
  }
  double s = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double DotScalar(std::span<const double> a, std::span<const double> b) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const size_t n = a.size();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (size_t l = 0; l < 4; ++l) lane[l] += a[i + l] * b[i + l];
  }
  double s = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void AxpyScalar(double alpha, std::span<const double> x, std::span<double> y) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

double ClampNonnegativeSumScalar(std::span<double> v) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const size_t n = v.size();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (size_t l = 0; l < 4; ++l) {
      v[i + l] = std::max(v[i + l], 0.0);
      lane[l] += v[i + l];
    }
  }
  double s = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (; i < n; ++i) {
    v[i] = std::max(v[i], 0.0);
    s += v[i];
  }
  return s;
}

}  // namespace

const KernelTable& ScalarKernels() {
  static constexpr KernelTable kTable = {
      OrMaskScalar,          AccumulateIndexScalar, MaxAbsDiffScalar,
      SumAbsDiffScalar,      DotScalar,             AxpyScalar,
      ClampNonnegativeSumScalar,
  };
  return kTable;
}

}  // namespace kernels
}  // namespace missdp
