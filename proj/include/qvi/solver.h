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

// Tseng's forward-backward-forward extragradient iteration with a
// non-monotone self-adaptive step size:
//
//   z_n       = P_C(u_n - lambda_n F(u_n))
//   u_{n+1}   = z_n + lambda_n (F(u_n) - F(z_n))
//   lambda_{n+1} = min(mu ||u_n - z_n|| / ||F(u_n) - F(z_n)||, lambda_n + xi_n)
//                  (or lambda_n + xi_n when F(u_n) = F(z_n))
//
// with xi_n = a / (n + 1)^p summable. For the relaxed l1 set the projection
// halfspace is anchored at u_n.

#include <chrono>
#include <optional>
#include <variant>
#include <vector>

#include "qvi/geometry.h"
#include "qvi/linalg.h"
#include "qvi/operators.h"

namespace qvi {

struct XiSequence {
  double scale = 100.0;
  double exponent = 1.1;

  void Validate() const;
  bool operator==(const XiSequence&) const = default;
};

// xi_n = scale / (n + 1)^exponent, n >= 1.
double Xi(std::size_t n, const XiSequence& xi);

// sum_{k=1}^{count} xi_k.
double XiPartialSum(const XiSequence& xi, std::size_t count);

// Upper bound on sum_{k>=1} xi_k: the partial sum through `count` plus the
// tail bound scale * p / ((p - 1) (count + 1)^(p - 1)).
double XiTotalBound(const XiSequence& xi, std::size_t count);

// ||u_{n+1} - u_n||^2 < tol.
struct SquaredStep {
  double tol;
};
// ||u_{n+1} - u_n|| < tol. This is the criterion the published tables for
// the scalar examples were produced with.
struct StepNorm {
  double tol;
};
// ||u_n - z_n|| <= tol or ||F(z_n)|| <= tol; reports z_n as the solution.
struct ExactTermination {
  double tol = 0.0;
};
// (1/N) ||u_{n+1} - reference||^2 < tol.
struct MseToReference {
  Vector reference;
  double tol;
};

using StoppingRule =
    std::variant<SquaredStep, StepNorm, ExactTermination, MseToReference>;

enum class TraceLevel { kFinal, kFull };

struct SolverConfig {
  double lambda1 = 1.0;
  double mu = 0.3;
  XiSequence xi;
  StoppingRule stop = StepNorm{1e-6};
  std::size_t max_iters = 500;
  TraceLevel trace_level = TraceLevel::kFinal;

  // Throws InputError naming the offending field.
  void Validate() const;
};

// One executed step n: u_n, z_n, u_{n+1}, lambda_n, lambda_{n+1}.
struct IterationRecord {
  std::size_t n = 0;
  Vector u;
  Vector z;
  Vector u_next;
  double lambda = 0.0;
  double lambda_next = 0.0;
  double error = 0.0;     // per the stopping rule
  double residual = 0.0;  // ||u_n - z_n||
};

struct SolveTrace {
  std::vector<IterationRecord> records;
  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

enum class SolveStatus { kConverged, kMaxIters, kTerminatedExact };

std::string_view StatusName(SolveStatus status);

struct SolveResult {
  Vector final_point;
  std::size_t iterations = 0;
  SolveStatus status = SolveStatus::kMaxIters;
  double wall_time_seconds = 0.0;
  std::optional<SolveTrace> trace;
};

double UpdateStepSize(double lambda, double xi, ConstSpan u, ConstSpan z,
                      ConstSpan fu, ConstSpan fz, double mu);

struct TsengStepResult {
  Vector u_next;
  Vector z;
  double lambda_next = 0.0;
  Vector fu;
  Vector fz;
};

// Throws NumericError (carrying n) if F produces non-finite values.
TsengStepResult TsengStep(ConstSpan u, double lambda, const Mapping& f,
                          const FeasibleSet& set, std::size_t n,
                          const SolverConfig& cfg);

SolveResult Solve(const Mapping& f, const FeasibleSet& set, ConstSpan u1,
                  const SolverConfig& cfg);

}  // namespace qvi
