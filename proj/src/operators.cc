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

#include "qvi/operators.h"

#include <cmath>
#include <numbers>
#include <random>

namespace qvi {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double ScalarArg(ConstSpan x, std::string_view name) {
  if (x.size() != 1) {
    throw InputError(std::string(name) + ": expected a 1-dimensional point, got " +
                     std::to_string(x.size()));
  }
  return x[0];
}

// Number of sine zeros 2k pi + 3pi/2 stored as known solutions.
constexpr int kSineSolutionCount = 16;

Vector SampleIn(const Box& box, std::mt19937_64& rng) {
  Vector out(box.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uniform_real_distribution<double> dist(box.lo()[i], box.hi()[i]);
    out[i] = dist(rng);
  }
  return out;
}

void RequireSampleable(const Box& domain, std::size_t pairs, const char* op) {
  if (pairs == 0) throw InputError(std::string(op) + ": pairs must be >= 1");
  if (!domain.IsBounded()) {
    throw InputError(std::string(op) +
                     ": domain is unbounded; pass a bounded sampling window");
  }
}

}  // namespace

Mapping::Mapping(Kind kind, std::optional<double> lipschitz,
                 std::vector<Vector> solutions,
                 std::vector<Vector> dual_solutions)
    : kind_(std::move(kind)),
      lipschitz_(lipschitz),
      solutions_(std::move(solutions)),
      dual_solutions_(std::move(dual_solutions)) {
  if (lipschitz_ && !(*lipschitz_ > 0.0)) {
    throw InputError("Mapping: lipschitz hint must be > 0");
  }
}

Mapping Mapping::Cubic() {
  return Mapping(CubicQuasi{}, 1.0, {{-1.0}, {0.0}, {1.0}}, {{0.0}});
}

Mapping Mapping::Sine() {
  std::vector<Vector> solutions = {{0.0}};
  for (int k = 0; k < kSineSolutionCount; ++k) {
    solutions.push_back({2.0 * k * std::numbers::pi + 1.5 * std::numbers::pi});
  }
  return Mapping(SinePlusOne{}, 1.0, std::move(solutions), {{0.0}});
}

Mapping Mapping::Piecewise() {
  return Mapping(PiecewiseQuad{}, 2.0, {{0.0}, {-1.0}}, {{-1.0}});
}

Mapping Mapping::LeastSquaresFit(Matrix sensing, Vector observed) {
  if (sensing.rows() != observed.size()) {
    throw InputError("LeastSquares: T has " + std::to_string(sensing.rows()) +
                     " rows but y has " + std::to_string(observed.size()) +
                     " entries");
  }
  std::optional<double> lipschitz;
  if (sensing.rows() > 0 && sensing.cols() > 0) {
    const double norm = GramSpectralNorm(sensing);
    if (norm > 0.0) lipschitz = norm;
  }
  return Mapping(LeastSquares{std::move(sensing), std::move(observed)},
                 lipschitz, {}, {});
}

Vector Mapping::Eval(ConstSpan x) const {
  return std::visit(
      Overloaded{
          [&](const CubicQuasi&) -> Vector {
            const double z = ScalarArg(x, "CubicQuasi");
            return {(1.0 - std::fabs(z)) * z};
          },
          [&](const SinePlusOne&) -> Vector {
            return {1.0 + std::sin(ScalarArg(x, "SinePlusOne"))};
          },
          [&](const PiecewiseQuad&) -> Vector {
            const double z = ScalarArg(x, "PiecewiseQuad");
            if (z > 1.0) return {2.0 * z - 1.0};
            if (z < -1.0) return {-2.0 * z - 1.0};
            return {z * z};
          },
          [&](const LeastSquares& ls) -> Vector {
            Vector residual = Multiply(ls.sensing, x);
            Axpy(-1.0, ls.observed, residual);
            return MultiplyTransposed(ls.sensing, residual);
          },
      },
      kind_);
}

VectorField Mapping::AsField() const {
  return [this](ConstSpan x) { return Eval(x); };
}

std::string_view Mapping::name() const {
  return std::visit(Overloaded{
                        [](const CubicQuasi&) { return "cubic"; },
                        [](const SinePlusOne&) { return "sine"; },
                        [](const PiecewiseQuad&) { return "piecewise"; },
                        [](const LeastSquares&) { return "least-squares"; },
                    },
                    kind_);
}

std::size_t Mapping::dim() const {
  if (const auto* ls = std::get_if<LeastSquares>(&kind_)) {
    return ls->sensing.cols();
  }
  return 1;
}

QuasimonotoneReport CheckQuasimonotone(const VectorField& f, const Box& domain,
                                       std::size_t pairs, std::uint64_t seed) {
  RequireSampleable(domain, pairs, "CheckQuasimonotone");
  std::mt19937_64 rng(seed);
  QuasimonotoneReport report;
  report.pairs = pairs;
  for (std::size_t k = 0; k < pairs; ++k) {
    Vector u = SampleIn(domain, rng);
    Vector z = SampleIn(domain, rng);
    const Vector diff = Subtract(z, u);
    const double forward = Dot(f(u), diff);
    if (forward <= kQuasimonotoneTolerance) continue;
    const double backward = Dot(f(z), diff);
    if (backward < -kQuasimonotoneTolerance) {
      report.violations.push_back(
          {std::move(u), std::move(z), forward, backward});
    }
  }
  return report;
}

QuasimonotoneReport CheckQuasimonotone(const Mapping& f, const Box& domain,
                                       std::size_t pairs, std::uint64_t seed) {
  return CheckQuasimonotone(f.AsField(), domain, pairs, seed);
}

double LipschitzEstimate(const VectorField& f, const Box& domain,
                         std::size_t pairs, std::uint64_t seed) {
  RequireSampleable(domain, pairs, "LipschitzEstimate");
  std::mt19937_64 rng(seed);
  double best = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const Vector u = SampleIn(domain, rng);
    const Vector z = SampleIn(domain, rng);
    const double step = Distance(u, z);
    if (step == 0.0) continue;
    best = std::max(best, Distance(f(u), f(z)) / step);
  }
  return best;
}

double LipschitzEstimate(const Mapping& f, const Box& domain, std::size_t pairs,
                         std::uint64_t seed) {
  return LipschitzEstimate(f.AsField(), domain, pairs, seed);
}

std::optional<Box> DefaultSamplingWindow(const Mapping& f) {
  if (std::holds_alternative<SinePlusOne>(f.kind())) {
    return Box::Interval(0.0, 8.0 * std::numbers::pi);
  }
  return std::nullopt;
}

double GramSpectralNorm(const Matrix& a, std::size_t max_iters,
                        double rel_tol) {
  if (a.cols() == 0 || a.rows() == 0) return 0.0;
  // Fixed pseudo-random start: never orthogonal to the top eigenvector in
  // practice, and reproducible.
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Vector v(a.cols());
  for (double& x : v) x = normal(rng);
  double estimate = 0.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    const double norm = Norm(v);
    if (norm == 0.0) return 0.0;
    for (double& x : v) x /= norm;
    Vector w = MultiplyTransposed(a, Multiply(a, v));
    const double next = Dot(v, w);  // Rayleigh quotient
    v = std::move(w);
    if (std::fabs(next - estimate) <= rel_tol * std::fabs(next)) {
      return next;
    }
    estimate = next;
  }
  return estimate;
}

}  // namespace qvi
