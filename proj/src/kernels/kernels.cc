// Copyright 2026 The qvi Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qvi/kernels.h"

#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.h"

namespace qvi::kernels {
namespace {

constexpr KernelTable kScalarTable = {
    Isa::kScalar,  &scalar::Dot,  &scalar::SumSq, &scalar::DistSq,
    &scalar::AbsSum, &scalar::Axpy, &scalar::Xpby,  &scalar::Sub,
    &scalar::Gemv,   &scalar::GemvT,
};

#if defined(QVI_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table = {
    Isa::kAvx2,    &avx2::Dot,  &avx2::SumSq, &avx2::DistSq,
    &avx2::AbsSum, &avx2::Axpy, &avx2::Xpby,  &avx2::Sub,
    &avx2::Gemv,   &avx2::GemvT,
};
#endif

bool DetectAvx2() {
#if defined(QVI_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* InitialTable() {
  const char* env = std::getenv("QVI_ISA");
  if (env != nullptr && std::string(env) == "scalar") return &kScalarTable;
#if defined(QVI_HAVE_AVX2_KERNELS)
  if (Avx2Supported()) return &kAvx2Table;
#endif
  return &kScalarTable;
}

std::atomic<const KernelTable*>& Selected() {
  static std::atomic<const KernelTable*> selected{InitialTable()};
  return selected;
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& ScalarKernels() { return kScalarTable; }

bool Avx2Supported() {
  static const bool supported = DetectAvx2();
  return supported;
}

const KernelTable& Avx2Kernels() {
#if defined(QVI_HAVE_AVX2_KERNELS)
  if (Avx2Supported()) return kAvx2Table;
#endif
  std::abort();
}

const KernelTable& Active() {
  return *Selected().load(std::memory_order_acquire);
}

bool SetActiveIsa(Isa isa) {
  if (isa == Isa::kScalar) {
    Selected().store(&kScalarTable, std::memory_order_release);
    return true;
  }
  if (!Avx2Supported()) return false;
  Selected().store(&Avx2Kernels(), std::memory_order_release);
  return true;
}

}  // namespace qvi::kernels
