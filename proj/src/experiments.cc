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

#include "qvi/experiments.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace qvi {

ExampleProblem MakeExample(ExampleId id) {
  switch (id) {
    case ExampleId::kCubic:
      return {Mapping::Cubic(), Box::Interval(-1.0, 1.0)};
    case ExampleId::kSine:
      return {Mapping::Sine(),
              Box::Interval(0.0, std::numeric_limits<double>::infinity())};
  }
  throw InputError("MakeExample: unknown example");
}

TableSpec DefaultTableSpec(ExampleId id) {
  TableSpec spec;
  spec.example = id;
  spec.tolerances = {1e-6, 1e-8};
  if (id == ExampleId::kCubic) {
    spec.initial_points = {0.6, 0.9, 2.0, 3.0, -3.0};
    spec.mu = 0.3;
  } else {
    spec.initial_points = {2.0, 0.1, -0.5, 4.0, -2.0};
    spec.mu = 0.5;
  }
  return spec;
}

double IdentifyLimit(const Mapping& f, double final_point) {
  double best = final_point;
  double best_dist = kLimitSnapTolerance;
  for (const Vector& s : f.known_solutions()) {
    const double dist = std::fabs(s[0] - final_point);
    if (dist <= best_dist) {
      best = s[0];
      best_dist = dist;
    }
  }
  return best;
}

SolverConfig TableRowConfig(const TableSpec& spec, double tol) {
  SolverConfig cfg;
  cfg.lambda1 = spec.lambda1;
  cfg.mu = spec.mu;
  cfg.xi = spec.xi;
  cfg.max_iters = spec.max_iters;
  if (spec.squared_error) {
    cfg.stop = SquaredStep{tol};
  } else {
    cfg.stop = StepNorm{tol};
  }
  return cfg;
}

std::vector<TableRow> RunExampleTable(const TableSpec& spec) {
  if (spec.initial_points.empty() || spec.tolerances.empty()) {
    throw InputError("RunExampleTable: no rows");
  }
  const ExampleProblem problem = MakeExample(spec.example);
  std::vector<TableRow> rows;
  rows.reserve(spec.initial_points.size() * spec.tolerances.size());
  for (const double u1 : spec.initial_points) {
    for (const double tol : spec.tolerances) {
      const SolverConfig cfg = TableRowConfig(spec, tol);
      const Vector start = {u1};
      const SolveResult result = Solve(problem.mapping, problem.set, start, cfg);
      TableRow row;
      row.u1 = u1;
      row.tol = tol;
      row.iterations = result.iterations;
      row.cpu_seconds = result.wall_time_seconds;
      row.final_point = result.final_point[0];
      row.limit = IdentifyLimit(problem.mapping, row.final_point);
      row.status = result.status;
      rows.push_back(row);
    }
  }
  return rows;
}

RecoveryInstance GenRecovery(std::size_t m, std::size_t n, std::size_t k,
                             std::uint64_t seed) {
  if (k > n) {
    throw InputError("GenRecovery: K=" + std::to_string(k) + " exceeds N=" +
                     std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  RecoveryInstance inst;
  inst.seed = seed;
  inst.sensing = Matrix(m, n);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : inst.sensing.data()) v = normal(rng);

  // Partial Fisher-Yates: the first k slots are the support.
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(positions[i], positions[pick(rng)]);
  }
  inst.signal.assign(n, 0.0);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < k; ++i) {
    inst.signal[positions[i]] = coin(rng) ? 1.0 : -1.0;
  }
  inst.observed = Multiply(inst.sensing, inst.signal);
  inst.radius = static_cast<double>(k);
  return inst;
}

double Mse(ConstSpan u, ConstSpan reference) {
  CheckSameSize(u, reference, "Mse");
  if (u.empty()) return 0.0;
  return SquaredDistance(u, reference) / static_cast<double>(u.size());
}

SolverConfig DefaultRecoveryConfig(const RecoveryInstance& instance) {
  SolverConfig cfg;
  cfg.lambda1 = 0.1;
  cfg.mu = 0.3;
  cfg.stop = MseToReference{instance.signal, 1e-6};
  cfg.max_iters = 2000;
  cfg.trace_level = TraceLevel::kFull;
  return cfg;
}

RecoveryRun RunRecovery(const RecoveryInstance& instance, SolverConfig cfg) {
  cfg.trace_level = TraceLevel::kFull;
  const Mapping mapping =
      Mapping::LeastSquaresFit(instance.sensing, instance.observed);
  const FeasibleSet set = RelaxedL1Ball(instance.radius);
  const Vector start(instance.signal.size(), 0.0);

  RecoveryRun run;
  run.result = Solve(mapping, set, start, cfg);
  const SolveTrace& trace = *run.result.trace;
  run.mse_series.reserve(trace.size());
  for (const IterationRecord& rec : trace.records) {
    run.mse_series.push_back(Mse(rec.u_next, instance.signal));
  }
  run.ratio = A5RatioSeries(trace, mapping, instance.signal, 1.0);
  return run;
}

}  // namespace qvi
