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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qvi {

using Vector = std::vector<double>;
using ConstSpan = std::span<const double>;
using MutableSpan = std::span<double>;

// Bad arguments: dimension mismatches, out-of-range parameters, malformed
// configuration. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite arithmetic encountered while iterating. Exit code 3.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::size_t iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) +
                           ")"),
        iteration_(iteration) {}
  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

// Broken internal invariant; never expected on valid input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

void CheckSameSize(ConstSpan a, ConstSpan b, const char* what);

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  ConstSpan data() const { return data_; }
  MutableSpan data() { return data_; }
  ConstSpan row(std::size_t r) const {
    return ConstSpan(data_).subspan(r * cols_, cols_);
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

// Thin wrappers that route through kernels::Active().
double Dot(ConstSpan x, ConstSpan y);
double SquaredNorm(ConstSpan x);
double Norm(ConstSpan x);
double SquaredDistance(ConstSpan x, ConstSpan y);
double Distance(ConstSpan x, ConstSpan y);
double L1Norm(ConstSpan x);
void Axpy(double a, ConstSpan x, MutableSpan y);
Vector Subtract(ConstSpan x, ConstSpan y);
// x + b*y
Vector AddScaled(ConstSpan x, double b, ConstSpan y);

Vector Multiply(const Matrix& a, ConstSpan x);
Vector MultiplyTransposed(const Matrix& a, ConstSpan x);

bool AllFinite(ConstSpan x);

}  // namespace qvi
