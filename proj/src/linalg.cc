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

#include "qvi/linalg.h"

#include <algorithm>
#include <cmath>

#include "qvi/kernels.h"

namespace qvi {

void CheckSameSize(ConstSpan a, ConstSpan b, const char* what) {
  if (a.size() != b.size()) {
    throw InputError(std::string(what) + ": dimension mismatch (" +
                     std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
}

double Dot(ConstSpan x, ConstSpan y) {
  CheckSameSize(x, y, "Dot");
  return kernels::Active().dot(x.data(), y.data(), x.size());
}

double SquaredNorm(ConstSpan x) {
  return kernels::Active().sum_sq(x.data(), x.size());
}

double Norm(ConstSpan x) { return std::sqrt(SquaredNorm(x)); }

double SquaredDistance(ConstSpan x, ConstSpan y) {
  CheckSameSize(x, y, "SquaredDistance");
  return kernels::Active().dist_sq(x.data(), y.data(), x.size());
}

double Distance(ConstSpan x, ConstSpan y) {
  return std::sqrt(SquaredDistance(x, y));
}

double L1Norm(ConstSpan x) {
  return kernels::Active().abs_sum(x.data(), x.size());
}

void Axpy(double a, ConstSpan x, MutableSpan y) {
  CheckSameSize(x, y, "Axpy");
  kernels::Active().axpy(a, x.data(), y.data(), x.size());
}

Vector Subtract(ConstSpan x, ConstSpan y) {
  CheckSameSize(x, y, "Subtract");
  Vector out(x.size());
  kernels::Active().sub(x.data(), y.data(), out.data(), x.size());
  return out;
}

Vector AddScaled(ConstSpan x, double b, ConstSpan y) {
  CheckSameSize(x, y, "AddScaled");
  Vector out(x.size());
  kernels::Active().xpby(x.data(), b, y.data(), out.data(), x.size());
  return out;
}

Vector Multiply(const Matrix& a, ConstSpan x) {
  if (x.size() != a.cols()) {
    throw InputError("Multiply: matrix has " + std::to_string(a.cols()) +
                     " columns, vector has " + std::to_string(x.size()));
  }
  Vector out(a.rows());
  kernels::Active().gemv(a.data().data(), a.rows(), a.cols(), x.data(),
                         out.data());
  return out;
}

Vector MultiplyTransposed(const Matrix& a, ConstSpan x) {
  if (x.size() != a.rows()) {
    throw InputError("MultiplyTransposed: matrix has " +
                     std::to_string(a.rows()) + " rows, vector has " +
                     std::to_string(x.size()));
  }
  Vector out(a.cols());
  kernels::Active().gemv_t(a.data().data(), a.rows(), a.cols(), x.data(),
                           out.data());
  return out;
}

bool AllFinite(ConstSpan x) {
  return std::all_of(x.begin(), x.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace qvi
