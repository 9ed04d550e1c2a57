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

#pragma once

// Dense double-precision kernels behind every vector and matrix operation in
// the solver. Each kernel exists as a portable scalar reference and, on x86-64,
// as an AVX2+FMA variant. The active table is chosen once at first use from
// cpuid and may be pinned with QVI_ISA=scalar|avx2 or SetActiveIsa().
//
// The SIMD variants reassociate sums, so they agree with the scalar kernels
// to rounding (relative 1e-13 or so), not bit-for-bit. Element-wise kernels
// (axpy, xpby, sub) are bit-identical across variants.

#include <cstddef>
#include <string_view>

namespace qvi::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view IsaName(Isa isa);

struct KernelTable {
  Isa isa;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i x[i]^2
  double (*sum_sq)(const double* x, std::size_t n);
  // sum_i (x[i] - y[i])^2
  double (*dist_sq)(const double* x, const double* y, std::size_t n);
  // sum_i |x[i]|
  double (*abs_sum)(const double* x, std::size_t n);
  // y <- a*x + y
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out <- x + b*y
  void (*xpby)(const double* x, double b, const double* y, double* out,
               std::size_t n);
  // out <- x - y
  void (*sub)(const double* x, const double* y, double* out, std::size_t n);
  // out <- A x, A row-major rows x cols
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols,
               const double* x, double* out);
  // out <- A^T x, A row-major rows x cols, out has cols entries
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* out);
};

const KernelTable& ScalarKernels();

// True when this binary carries AVX2 kernels and the CPU supports AVX2+FMA.
bool Avx2Supported();

// Requires Avx2Supported().
const KernelTable& Avx2Kernels();

const KernelTable& Active();

// Returns false (and leaves the selection unchanged) if `isa` is unsupported.
bool SetActiveIsa(Isa isa);

}  // namespace qvi::kernels
