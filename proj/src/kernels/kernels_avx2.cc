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

// AVX2 variants. This translation unit is compiled with -mavx2 and must only
// be entered after a runtime CPU check. Floating-point contraction is off so
// that results match the scalar reference bit for bit.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "missdp/kernels/kernels.h"

namespace missdp {
namespace kernels {
namespace {

inline double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);  // (l0+l2, l1+l3)
  return _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
}

inline __m256d Abs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

void OrMaskAvx2(std::span<uint8_t> acc, std::span<const uint8_t> mask) {
  const size_t n = acc.size();
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    auto* dst = reinterpret_cast<__m256i*>(acc.data() + i);
    const __m256i a = _mm256_loadu_si256(dst);
    const __m256i m =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask.data() + i));
    _mm256_storeu_si256(dst, _mm256_or_si256(a, m));
  }
  for (; i < n; ++i) acc[i] |= mask[i];
}

void AccumulateIndexAvx2(std::span<int32_t> index,
                         std::span<const int32_t> codes, int32_t radix) {
  const size_t n = index.size();
  const __m256i r = _mm256_set1_epi32(radix);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    auto* dst = reinterpret_cast<__m256i*>(index.data() + i);
    const __m256i idx = _mm256_loadu_si256(dst);
    const __m256i c =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(codes.data() + i));
    _mm256_storeu_si256(dst, _mm256_add_epi32(_mm256_mullo_epi32(idx, r), c));
  }
  for (; i < n; ++i) index[i] = index[i] * radix + codes[i];
}

double MaxAbsDiffAvx2(std::span<const double> a, std::span<const double> b) {
  const size_t n = a.size();
  __m256d m = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    m = _mm256_max_pd(m, Abs(d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) out = std::max(out, std::fabs(a[i] - b[i]));
  return out;
}

double SumAbsDiffAvx2(std::span<const double> a, std::span<const double> b) {
  const size_t n = a.size();
  __m256d s = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    s = _mm256_add_pd(s, Abs(d));
  }
  double out = HorizontalSum(s);
  for (; i < n; ++i) out += std::fabs(a[i] - b[i]);
  return out;
}

double DotAvx2(std::span<const double> a, std::span<const double> b) {
  const size_t n = a.size();
  __m256d s = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s = _mm256_add_pd(
        s, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
  }
  double out = HorizontalSum(s);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

void AxpyAvx2(double alpha, std::span<const double> x, std::span<double> y) {
  const size_t n = y.size();
  const __m256d va = _mm256_set1_pd(alpha);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y.data() + i);
    const __m256d vx = _mm256_loadu_pd(x.data() + i);
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double ClampNonnegativeSumAvx2(std::span<double> v) {
  const size_t n = v.size();
  const __m256d zero = _mm256_setzero_pd();
  __m256d s = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // maxpd returns its second operand on ties and NaN, as std::max(x, 0.0)
    // returns x.
    const __m256d c = _mm256_max_pd(zero, _mm256_loadu_pd(v.data() + i));
    _mm256_storeu_pd(v.data() + i, c);
    s = _mm256_add_pd(s, c);
  }
  double out = HorizontalSum(s);
  for (; i < n; ++i) {
    v[i] = std::max(v[i], 0.0);
    out += v[i];
  }
  return out;
}

}  // namespace

const KernelTable& Avx2Kernels() {
  static constexpr KernelTable kTable = {
      OrMaskAvx2,          AccumulateIndexAvx2, MaxAbsDiffAvx2,
      SumAbsDiffAvx2,      DotAvx2,             AxpyAvx2,
      ClampNonnegativeSumAvx2,
  };
  return kTable;
}

}  // namespace kernels
}  // namespace missdp
