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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qvi/kernels.h"
#include "qvi/linalg.h"

namespace qvi::kernels {
namespace {

std::vector<double> RandomVector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

// Reduction results may differ in the last bits because the SIMD variant
// reassociates; this bounds the difference by the condition of the sum.
void ExpectCloseSum(double got, double want, double magnitude) {
  EXPECT_LE(std::abs(got - want), 1e-13 * (magnitude + 1.0))
      << got << " vs " << want;
}

class KernelEquivalenceTest : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    if (!Avx2Supported()) GTEST_SKIP() << "AVX2 kernels not available";
  }
};

TEST_P(KernelEquivalenceTest, ReductionsAgreeWithScalar) {
  const std::size_t n = GetParam();
  std::mt19937_64 rng(n + 17);
  const auto x = RandomVector(n, rng);
  const auto y = RandomVector(n, rng);
  const KernelTable& s = ScalarKernels();
  const KernelTable& v = Avx2Kernels();

  double abs_dot = 0.0;
  double sq = 0.0;
  double dsq = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    abs_dot += std::abs(x[i] * y[i]);
    sq += x[i] * x[i];
    dsq += (x[i] - y[i]) * (x[i] - y[i]);
    l1 += std::abs(x[i]);
  }
  ExpectCloseSum(v.dot(x.data(), y.data(), n), s.dot(x.data(), y.data(), n),
                 abs_dot);
  ExpectCloseSum(v.sum_sq(x.data(), n), s.sum_sq(x.data(), n), sq);
  ExpectCloseSum(v.dist_sq(x.data(), y.data(), n),
                 s.dist_sq(x.data(), y.data(), n), dsq);
  ExpectCloseSum(v.abs_sum(x.data(), n), s.abs_sum(x.data(), n), l1);
}

TEST_P(KernelEquivalenceTest, ElementwiseKernelsAreBitIdentical) {
  const std::size_t n = GetParam();
  std::mt19937_64 rng(n + 5);
  const auto x = RandomVector(n, rng);
  const auto y = RandomVector(n, rng);
  const KernelTable& s = ScalarKernels();
  const KernelTable& v = Avx2Kernels();

  auto ys = y;
  auto yv = y;
  s.axpy(-0.37, x.data(), ys.data(), n);
  v.axpy(-0.37, x.data(), yv.data(), n);
  EXPECT_EQ(ys, yv);

  std::vector<double> os(n), ov(n);
  s.xpby(x.data(), 2.5, y.data(), os.data(), n);
  v.xpby(x.data(), 2.5, y.data(), ov.data(), n);
  EXPECT_EQ(os, ov);

  s.sub(x.data(), y.data(), os.data(), n);
  v.sub(x.data(), y.data(), ov.data(), n);
  EXPECT_EQ(os, ov);
}

TEST_P(KernelEquivalenceTest, MatrixVectorAgreeWithScalar) {
  const std::size_t cols = GetParam();
  const std::size_t rows = cols / 2 + 3;
  std::mt19937_64 rng(cols * 31 + 1);
  const auto a = RandomVector(rows * cols, rng);
  const auto x = RandomVector(cols, rng);
  const auto w = RandomVector(rows, rng);
  const KernelTable& s = ScalarKernels();
  const KernelTable& v = Avx2Kernels();

  std::vector<double> gs(rows), gv(rows);
  s.gemv(a.data(), rows, cols, x.data(), gs.data());
  v.gemv(a.data(), rows, cols, x.data(), gv.data());
  for (std::size_t r = 0; r < rows; ++r) {
    double mag = 0.0;
    for (std::size_t c = 0; c < cols; ++c) mag += std::abs(a[r * cols + c] * x[c]);
    ExpectCloseSum(gv[r], gs[r], mag);
  }

  std::vector<double> ts(cols), tv(cols);
  s.gemv_t(a.data(), rows, cols, w.data(), ts.data());
  v.gemv_t(a.data(), rows, cols, w.data(), tv.data());
  for (std::size_t c = 0; c < cols; ++c) {
    double mag = 0.0;
    for (std::size_t r = 0; r < rows; ++r) mag += std::abs(a[r * cols + c] * w[r]);
    ExpectCloseSum(tv[c], ts[c], mag);
  }
}

// Lengths straddle the 4- and 16-wide unrolled bodies and their remainders.
INSTANTIATE_TEST_SUITE_P(Lengths, KernelEquivalenceTest,
                         ::testing::Values(0, 1, 3, 4, 5, 15, 16, 17, 33, 64,
                                           127, 512, 1001));

TEST(KernelScalarTest, MatchesNaiveLoops) {
  const KernelTable& s = ScalarKernels();
  const std::vector<double> x = {1.0, -2.0, 3.0};
  const std::vector<double> y = {4.0, 5.0, -6.0};
  EXPECT_EQ(s.dot(x.data(), y.data(), 3), 4.0 - 10.0 - 18.0);
  EXPECT_EQ(s.sum_sq(x.data(), 3), 14.0);
  EXPECT_EQ(s.dist_sq(x.data(), y.data(), 3), 9.0 + 49.0 + 81.0);
  EXPECT_EQ(s.abs_sum(x.data(), 3), 6.0);

  // 2x3 row-major [[1 2 3], [4 5 6]].
  const std::vector<double> a = {1, 2, 3, 4, 5, 6};
  std::vector<double> out(2);
  s.gemv(a.data(), 2, 3, x.data(), out.data());
  EXPECT_EQ(out, (std::vector<double>{6.0, 12.0}));
  std::vector<double> out_t(3);
  const std::vector<double> w = {1.0, -1.0};
  s.gemv_t(a.data(), 2, 3, w.data(), out_t.data());
  EXPECT_EQ(out_t, (std::vector<double>{-3.0, -3.0, -3.0}));
}

TEST(KernelDispatchTest, SelectionCanBePinned) {
  const Isa before = Active().isa;
  ASSERT_TRUE(SetActiveIsa(Isa::kScalar));
  EXPECT_EQ(Active().isa, Isa::kScalar);
  const std::vector<double> x = {3.0, 4.0};
  EXPECT_EQ(Norm(x), 5.0);
  if (Avx2Supported()) {
    ASSERT_TRUE(SetActiveIsa(Isa::kAvx2));
    EXPECT_EQ(Active().isa, Isa::kAvx2);
    EXPECT_EQ(Norm(x), 5.0);
  } else {
    EXPECT_FALSE(SetActiveIsa(Isa::kAvx2));
  }
  SetActiveIsa(before);
  EXPECT_EQ(IsaName(Isa::kScalar), "scalar");
}

TEST(LinalgTest, SizeMismatchIsInputError) {
  const std::vector<double> x = {1.0, 2.0};
  const std::vector<double> y = {1.0};
  EXPECT_THROW(Dot(x, y), InputError);
  Matrix a(2, 3);
  EXPECT_THROW(Multiply(a, x), InputError);
}

}  // namespace
}  // namespace qvi::kernels
