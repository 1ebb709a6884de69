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

// Data-parallel inner loops shared by the marginal counter, the distance
// metrics and the built-in classifiers. Every kernel has a portable scalar
// reference and an AVX2 variant; the dispatcher picks one at first use based
// on what the running CPU reports.

#ifndef MISSDP_KERNELS_KERNELS_H_
#define MISSDP_KERNELS_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace missdp {
namespace kernels {

enum class Isa { kScalar, kAvx2 };

// Table of kernel entry points for one instruction set.
struct KernelTable {
  // acc[i] |= mask[i]
  void (*or_mask)(std::span<uint8_t> acc, std::span<const uint8_t> mask);
  // index[i] = index[i] * radix + codes[i]  (mixed-radix accumulation)
  void (*accumulate_index)(std::span<int32_t> index,
                           std::span<const int32_t> codes, int32_t radix);
  // max_i |a[i] - b[i]|, 0 for empty input
  double (*max_abs_diff)(std::span<const double> a, std::span<const double> b);
  // sum_i |a[i] - b[i]|
  double (*sum_abs_diff)(std::span<const double> a, std::span<const double> b);
  double (*dot)(std::span<const double> a, std::span<const double> b);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, std::span<const double> x, std::span<double> y);
  // v[i] = max(v[i], 0); returns the sum after clamping
  double (*clamp_nonnegative_sum)(std::span<double> v);
};

const KernelTable& ScalarKernels();
// Only valid to call when Avx2Supported() is true.
const KernelTable& Avx2Kernels();

bool Avx2Supported();

// Kernels for the best ISA available on this CPU. Setting the environment
// variable MISSDP_FORCE_SCALAR=1 pins the scalar table.
const KernelTable& Active();
Isa ActiveIsa();
std::string_view IsaName(Isa isa);

}  // namespace kernels
}  // namespace missdp

#endif  // MISSDP_KERNELS_KERNELS_H_
