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

#include <cstdlib>
#include <cstring>

#include "missdp/kernels/kernels.h"

namespace missdp {
namespace kernels {
namespace {

bool ForceScalar() {
  const char* v = std::getenv("MISSDP_FORCE_SCALAR");
  return v != nullptr && std::strcmp(v, "0") != 0 && *v != '\0';
}

Isa DetectIsa() {
  if (ForceScalar()) return Isa::kScalar;
  return Avx2Supported() ? Isa::kAvx2 : Isa::kScalar;
}

}  // namespace

bool Avx2Supported() {
#if defined(MISSDP_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

#if !defined(MISSDP_HAVE_AVX2)
const KernelTable& Avx2Kernels() { return ScalarKernels(); }
#endif

Isa ActiveIsa() {
  static const Isa kIsa = DetectIsa();
  return kIsa;
}

const KernelTable& Active() {
  static const KernelTable& kTable =
      ActiveIsa() == Isa::kAvx2 ? Avx2Kernels() : ScalarKernels();
  return kTable;
}

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kAvx2:
      return "avx2";
    case Isa::kScalar:
      return "scalar";
  }
  return "unknown";
}

}  // namespace kernels
}  // namespace missdp
