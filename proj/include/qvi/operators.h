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

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>

#include "qvi/geometry.h"
#include "qvi/linalg.h"

namespace qvi {

// F(z) = (1 - |z|) z on the real line. On C = [-1, 1]: S = {-1, 0, 1},
// S_D = {0}.
struct CubicQuasi {};

// F(z) = 1 + sin(z). On C = [0, inf): S = {0} u {2k pi + 3pi/2}, S_D = {0}.
struct SinePlusOne {};

// F(z) = 2z - 1 for z > 1, z^2 on [-1, 1], -2z - 1 for z < -1.
// On C = [-1, 1]: S = {0, -1}, S_D = {-1}.
struct PiecewiseQuad {};

// Gradient of 0.5 ||T u - y||^2, i.e. F(u) = T^T (T u - y).
struct LeastSquares {
  Matrix sensing;
  Vector observed;
};

using VectorField = std::function<Vector(ConstSpan)>;

class Mapping {
 public:
  using Kind = std::variant<CubicQuasi, SinePlusOne, PiecewiseQuad, LeastSquares>;

  static Mapping Cubic();
  static Mapping Sine();
  static Mapping Piecewise();
  // Lipschitz hint is the power-iteration estimate of ||T^T T||_2.
  static Mapping LeastSquaresFit(Matrix sensing, Vector observed);

  Vector Eval(ConstSpan x) const;
  Vector operator()(ConstSpan x) const { return Eval(x); }
  // The returned field refers to *this and must not outlive it.
  VectorField AsField() const;

  const Kind& kind() const { return kind_; }
  std::string_view name() const;
  std::size_t dim() const;

  const std::optional<double>& lipschitz_hint() const { return lipschitz_; }
  const std::vector<Vector>& known_solutions() const { return solutions_; }
  const std::vector<Vector>& known_dual_solutions() const {
    return dual_solutions_;
  }

 private:
  Mapping(Kind kind, std::optional<double> lipschitz,
          std::vector<Vector> solutions, std::vector<Vector> dual_solutions);

  Kind kind_;
  std::optional<double> lipschitz_;
  std::vector<Vector> solutions_;
  std::vector<Vector> dual_solutions_;
};

// Strict inequalities are tested with this dead zone.
inline constexpr double kQuasimonotoneTolerance = 1e-12;

struct QuasimonotoneViolation {
  Vector u;
  Vector z;
  double forward;   // <F(u), z - u>
  double backward;  // <F(z), z - u>
};

struct QuasimonotoneReport {
  std::size_t pairs = 0;
  std::vector<QuasimonotoneViolation> violations;
  std::size_t count() const { return violations.size(); }
};

// Samples `pairs` uniform (u, z) in `domain` and records every pair with
// <F(u), z-u> > tol and <F(z), z-u> < -tol. `domain` must be bounded.
QuasimonotoneReport CheckQuasimonotone(const VectorField& f, const Box& domain,
                                       std::size_t pairs, std::uint64_t seed);
QuasimonotoneReport CheckQuasimonotone(const Mapping& f, const Box& domain,
                                       std::size_t pairs, std::uint64_t seed);

// max ||F(u) - F(z)|| / ||u - z|| over sampled pairs; a lower bound on L.
double LipschitzEstimate(const VectorField& f, const Box& domain,
                         std::size_t pairs, std::uint64_t seed);
double LipschitzEstimate(const Mapping& f, const Box& domain, std::size_t pairs,
                         std::uint64_t seed);

// Bounded window used to sample a mapping whose natural domain is unbounded:
// [0, 8 pi] for SinePlusOne. nullopt when there is no sensible default.
std::optional<Box> DefaultSamplingWindow(const Mapping& f);

// Largest eigenvalue of A^T A by power iteration.
double GramSpectralNorm(const Matrix& a, std::size_t max_iters = 5000,
                        double rel_tol = 1e-14);

}  // namespace qvi
