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

#include <cstddef>

namespace qvi::kernels {

#define QVI_KERNEL_DECLS                                                      \
  double Dot(const double* x, const double* y, std::size_t n);                \
  double SumSq(const double* x, std::size_t n);                               \
  double DistSq(const double* x, const double* y, std::size_t n);             \
  double AbsSum(const double* x, std::size_t n);                              \
  void Axpy(double a, const double* x, double* y, std::size_t n);             \
  void Xpby(const double* x, double b, const double* y, double* out,          \
            std::size_t n);                                                   \
  void Sub(const double* x, const double* y, double* out, std::size_t n);     \
  void Gemv(const double* a, std::size_t rows, std::size_t cols,              \
            const double* x, double* out);                                    \
  void GemvT(const double* a, std::size_t rows, std::size_t cols,             \
             const double* x, double* out);

namespace scalar {
QVI_KERNEL_DECLS
}  // namespace scalar

#if defined(QVI_HAVE_AVX2_KERNELS)
namespace avx2 {
QVI_KERNEL_DECLS
}  // namespace avx2
#endif

#undef QVI_KERNEL_DECLS

}  // namespace qvi::kernels
