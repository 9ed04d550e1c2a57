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

// Problem generators and table runners for the scalar examples
// (F(z) = (1-|z|)z on [-1, 1] and F(z) = 1 + sin z on [0, inf)) and for
// noiseless sparse signal recovery y = T u*.

#include <cstdint>
#include <vector>

#include "qvi/diagnostics.h"
#include "qvi/geometry.h"
#include "qvi/operators.h"
#include "qvi/solver.h"

namespace qvi {

enum class ExampleId { kCubic, kSine };

struct ExampleProblem {
  Mapping mapping;
  FeasibleSet set;
};

ExampleProblem MakeExample(ExampleId id);

struct TableSpec {
  ExampleId example = ExampleId::kCubic;
  std::vector<double> initial_points;
  double lambda1 = 1.0;
  double mu = 0.3;
  XiSequence xi;
  std::vector<double> tolerances;
  std::size_t max_iters = 500;
  // Step-norm criterion ||u_{n+1} - u_n|| < tol unless set.
  bool squared_error = false;
};

// Parameters and starting points of the published tables: lambda1 = 1,
// xi = 100 / (n+1)^1.1, tol in {1e-6, 1e-8}, 500 iterations, mu = 0.3
// (cubic) or 0.5 (sine).
TableSpec DefaultTableSpec(ExampleId id);

struct TableRow {
  double u1 = 0.0;
  double tol = 0.0;
  std::size_t iterations = 0;
  double cpu_seconds = 0.0;
  double limit = 0.0;  // snapped to the nearest known solution when close
  double final_point = 0.0;
  SolveStatus status = SolveStatus::kMaxIters;
};

// Solutions within this distance of a known solution are reported as it.
inline constexpr double kLimitSnapTolerance = 1e-2;

double IdentifyLimit(const Mapping& f, double final_point);

SolverConfig TableRowConfig(const TableSpec& spec, double tol);

// One row per (initial point, tolerance), points outermost.
std::vector<TableRow> RunExampleTable(const TableSpec& spec);

struct RecoveryInstance {
  Matrix sensing;  // M x N, standard normal entries
  Vector signal;   // K entries of +-1, the rest 0
  Vector observed; // sensing * signal
  double radius = 0.0;  // K
  std::uint64_t seed = 0;
};

// Throws InputError if K > N.
RecoveryInstance GenRecovery(std::size_t m, std::size_t n, std::size_t k,
                             std::uint64_t seed);

// (1/N) ||u - reference||^2.
double Mse(ConstSpan u, ConstSpan reference);

// lambda1 = 0.1, mu = 0.3, xi = 100/(n+1)^1.1, MSE < 1e-6, 2000 iterations.
SolverConfig DefaultRecoveryConfig(const RecoveryInstance& instance);

struct RecoveryRun {
  SolveResult result;
  std::vector<double> mse_series;  // MSE of u_{n+1} after each step
  RatioSeries ratio;               // eps = 1 against the true signal
};

// Starts from u1 = 0 on the relaxed l1 ball of radius K. The trace level of
// `cfg` is forced to kFull.
RecoveryRun RunRecovery(const RecoveryInstance& instance, SolverConfig cfg);

}  // namespace qvi
