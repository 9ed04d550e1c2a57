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

#include "qvi/cli/commands.h"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <numbers>
#include <string>

#include "qvi/cli/csv.h"
#include "qvi/cli/svg.h"
#include "qvi/diagnostics.h"
#include "qvi/experiments.h"
#include "qvi/kernels.h"

namespace qvi::cli {
namespace {

namespace fs = std::filesystem;

struct ScalarProblem {
  Mapping mapping;
  FeasibleSet set;
  double default_u1;
};

ScalarProblem MakeScalarProblem(const std::string& name) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (name == "cubic") return {Mapping::Cubic(), Box::Interval(-1.0, 1.0), 0.6};
  if (name == "sine") return {Mapping::Sine(), Box::Interval(0.0, kInf), 2.0};
  if (name == "piecewise") {
    return {Mapping::Piecewise(), Box::Interval(-1.0, 1.0), 0.6};
  }
  throw InputError("problem: unknown scalar problem '" + name + "'");
}

SolverConfig SolverFrom(const RunConfig& cfg, double tol) {
  SolverConfig s;
  s.lambda1 = cfg.lambda1;
  s.mu = cfg.mu;
  s.xi = {cfg.xi_scale, cfg.xi_exp};
  s.max_iters = cfg.max_iters;
  if (cfg.error == "squared") {
    s.stop = SquaredStep{tol};
  } else {
    s.stop = StepNorm{tol};
  }
  return s;
}

fs::path Sibling(const RunConfig& cfg, const std::string& suffix) {
  return fs::path(cfg.out) / (std::string(CommandName(cfg.command)) + suffix);
}

std::vector<double> Iota(std::size_t count, double first) {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = first + static_cast<double>(i);
  return v;
}

// A full-trace run of whatever `cfg.problem` names, plus the reference point
// used for distances.
struct TracedRun {
  SolveResult result;
  Vector reference;
  std::optional<Mapping> mapping;
};

TracedRun RunTraced(const RunConfig& cfg) {
  TracedRun run;
  if (cfg.problem == "recovery") {
    const RecoveryInstance inst = GenRecovery(cfg.m, cfg.n, cfg.k, cfg.seed);
    SolverConfig s = SolverFrom(cfg, cfg.tol.front());
    s.stop = MseToReference{inst.signal, cfg.tol.front()};
    s.trace_level = TraceLevel::kFull;
    run.mapping = Mapping::LeastSquaresFit(inst.sensing, inst.observed);
    run.result = Solve(*run.mapping, RelaxedL1Ball(inst.radius),
                       Vector(cfg.n, 0.0), s);
    run.reference = inst.signal;
    return run;
  }
  ScalarProblem problem = MakeScalarProblem(cfg.problem);
  SolverConfig s = SolverFrom(cfg, cfg.tol.front());
  s.trace_level = TraceLevel::kFull;
  const Vector start = {cfg.u1.empty() ? problem.default_u1 : cfg.u1.front()};
  run.result = Solve(problem.mapping, problem.set, start, s);
  const double limit = cfg.reference.value_or(
      IdentifyLimit(problem.mapping, run.result.final_point[0]));
  run.reference = {limit};
  run.mapping = std::move(problem.mapping);
  return run;
}

void RunSolve(const RunConfig& cfg, std::ostream& log) {
  ScalarProblem problem = MakeScalarProblem(cfg.problem);
  SolverConfig s = SolverFrom(cfg, cfg.tol.front());
  s.trace_level = TraceLevel::kFull;
  const Vector start = {cfg.u1.empty() ? problem.default_u1 : cfg.u1.front()};
  const SolveResult result = Solve(problem.mapping, problem.set, start, s);

  CsvTable table{{"n", "u", "z", "lambda", "error", "residual"}, {}};
  for (const IterationRecord& rec : result.trace->records) {
    table.rows.push_back({static_cast<std::int64_t>(rec.n), rec.u[0], rec.z[0],
                          rec.lambda, rec.error, rec.residual});
  }
  EmitCsv(table, CsvPath(cfg));
  if (cfg.plot) {
    PlotSeries err{"error", {}, {}};
    for (const IterationRecord& rec : result.trace->records) {
      err.x.push_back(static_cast<double>(rec.n));
      err.y.push_back(rec.error);
    }
    EmitSvgPlot(std::span(&err, 1), PlotKind::kErrorVsIterLogLog,
                Sibling(cfg, ".svg"), "error vs iteration");
  }
  log << "problem=" << cfg.problem << " u1=" << start[0]
      << " status=" << StatusName(result.status)
      << " iterations=" << result.iterations
      << " final=" << FormatDouble(result.final_point[0]) << " limit="
      << FormatDouble(IdentifyLimit(problem.mapping, result.final_point[0]))
      << '\n';
}

void RunTable(const RunConfig& cfg, std::ostream& log) {
  TableSpec spec = DefaultTableSpec(cfg.command == Command::kTable1
                                        ? ExampleId::kCubic
                                        : ExampleId::kSine);
  if (!cfg.u1.empty()) spec.initial_points = cfg.u1;
  spec.lambda1 = cfg.lambda1;
  spec.mu = cfg.mu;
  spec.xi = {cfg.xi_scale, cfg.xi_exp};
  spec.tolerances = cfg.tol;
  spec.max_iters = cfg.max_iters;
  spec.squared_error = cfg.error == "squared";

  const std::vector<TableRow> rows = RunExampleTable(spec);
  CsvTable table{{"u1", "tol", "iterations", "cpu_seconds", "limit"}, {}};
  log << std::setw(8) << "u1" << std::setw(10) << "tol" << std::setw(8)
      << "iter" << std::setw(14) << "cpu_s" << std::setw(10) << "limit"
      << '\n';
  for (const TableRow& row : rows) {
    table.rows.push_back({row.u1, row.tol,
                          static_cast<std::int64_t>(row.iterations),
                          row.cpu_seconds, row.limit});
    log << std::setw(8) << row.u1 << std::setw(10) << row.tol << std::setw(8)
        << row.iterations << std::setw(14) << row.cpu_seconds << std::setw(10)
        << row.limit << '\n';
  }
  EmitCsv(table, CsvPath(cfg));
}

void RunRecoveryCommand(const RunConfig& cfg, std::ostream& log) {
  CsvTable table{{"seed", "M", "N", "K", "iterations", "status", "cpu_seconds",
                  "final_mse"},
                 {}};
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    const std::uint64_t seed = cfg.seed + r;
    const RecoveryInstance inst = GenRecovery(cfg.m, cfg.n, cfg.k, seed);
    SolverConfig s = DefaultRecoveryConfig(inst);
    s.lambda1 = cfg.lambda1;
    s.mu = cfg.mu;
    s.xi = {cfg.xi_scale, cfg.xi_exp};
    s.max_iters = cfg.max_iters;
    s.stop = MseToReference{inst.signal, cfg.tol.front()};
    const RecoveryRun run = RunRecovery(inst, s);
    const double final_mse =
        run.mse_series.empty() ? Mse(run.result.final_point, inst.signal)
                               : run.mse_series.back();
    table.rows.push_back({static_cast<std::int64_t>(seed),
                          static_cast<std::int64_t>(cfg.m),
                          static_cast<std::int64_t>(cfg.n),
                          static_cast<std::int64_t>(cfg.k),
                          static_cast<std::int64_t>(run.result.iterations),
                          std::string(StatusName(run.result.status)),
                          run.result.wall_time_seconds, final_mse});
    log << "seed=" << seed << " iterations=" << run.result.iterations
        << " status=" << StatusName(run.result.status)
        << " mse=" << FormatDouble(final_mse)
        << " min_ratio=" << FormatDouble(run.ratio.min_ratio) << '\n';

    if (cfg.plot && r == 0) {
      PlotSeries mse{"MSE", Iota(run.mse_series.size(), 1.0), run.mse_series};
      EmitSvgPlot(std::span(&mse, 1), PlotKind::kErrorVsIterLogLog,
                  Sibling(cfg, "_mse.svg"), "MSE vs iteration");
      PlotSeries ratio{"ratio", {}, {}};
      for (const RatioEntry& e : run.ratio.values) {
        ratio.x.push_back(static_cast<double>(e.n));
        ratio.y.push_back(e.ratio);
      }
      if (!ratio.x.empty()) {
        EmitSvgPlot(std::span(&ratio, 1), PlotKind::kRatioVsIter,
                    Sibling(cfg, "_ratio.svg"), "growth ratio (eps = 1)");
      }
      const std::vector<PlotSeries> signals = {
          {"original signal", Iota(cfg.n, 1.0), inst.signal},
          {"recovered signal", Iota(cfg.n, 1.0), run.result.final_point},
      };
      EmitSvgPlot(signals, PlotKind::kSignalStem, Sibling(cfg, "_signal.svg"),
                  "recovery");
    }
  }
  EmitCsv(table, CsvPath(cfg));
}

void RunRates(const RunConfig& cfg, std::ostream& log) {
  const TracedRun run = RunTraced(cfg);
  std::vector<double> errors;
  const auto& records = run.result.trace->records;
  for (const IterationRecord& rec : records) {
    errors.push_back(Distance(rec.u, run.reference));
  }
  if (!records.empty()) {
    errors.push_back(Distance(records.back().u_next, run.reference));
  }
  // The rate fit needs strictly positive errors; stop at an exact hit.
  std::size_t usable = 0;
  while (usable < errors.size() && errors[usable] > 0.0) ++usable;

  CsvTable table{{"n", "error", "ratio"}, {}};
  for (std::size_t i = 0; i < errors.size(); ++i) {
    CsvCell ratio = std::string();
    if (i > 0 && errors[i - 1] > 0.0) ratio = errors[i] / errors[i - 1];
    table.rows.push_back({static_cast<std::int64_t>(i + 1), errors[i], ratio});
  }
  EmitCsv(table, CsvPath(cfg));
  if (cfg.plot && usable > 0) {
    PlotSeries err{"||u_n - u*||", Iota(usable, 1.0),
                   std::vector<double>(errors.begin(), errors.begin() + usable)};
    EmitSvgPlot(std::span(&err, 1), PlotKind::kErrorVsIterLogLog,
                Sibling(cfg, ".svg"), "distance to limit");
  }
  log << "iterations=" << run.result.iterations
      << " status=" << StatusName(run.result.status);
  if (usable >= cfg.tail_window) {
    const RateEstimate est = EstimateRates(
        std::span<const double>(errors.data(), usable), cfg.tail_window);
    log << " q_factor=" << FormatDouble(est.q_factor)
        << " sublinear_order=" << FormatDouble(est.sublinear_order);
  } else {
    log << " (too few positive errors for a rate fit: " << usable << " < "
        << cfg.tail_window << ")";
  }
  log << '\n';
}

void RunRatio(const RunConfig& cfg, std::ostream& log) {
  const TracedRun run = RunTraced(cfg);
  const RatioSeries series =
      A5RatioSeries(*run.result.trace, *run.mapping, run.reference, cfg.epsilon);
  CsvTable table{{"n", "ratio"}, {}};
  PlotSeries plot{"ratio", {}, {}};
  for (const RatioEntry& e : series.values) {
    table.rows.push_back({static_cast<std::int64_t>(e.n), e.ratio});
    plot.x.push_back(static_cast<double>(e.n));
    plot.y.push_back(e.ratio);
  }
  EmitCsv(table, CsvPath(cfg));
  if (cfg.plot && !plot.x.empty()) {
    EmitSvgPlot(std::span(&plot, 1), PlotKind::kRatioVsIter,
                Sibling(cfg, ".svg"), "growth ratio");
  }
  log << "iterations=" << run.result.iterations
      << " retained=" << series.values.size()
      << " min_ratio=" << FormatDouble(series.min_ratio) << '\n';
}

void RunCertify(const RunConfig& cfg, std::ostream& log) {
  std::vector<Vector> points;
  if (cfg.preset == "sine") {
    points.push_back({0.0});
    for (std::size_t k = 0; k + 1 < cfg.count; ++k) {
      points.push_back({2.0 * static_cast<double>(k) * std::numbers::pi +
                        1.5 * std::numbers::pi});
    }
  } else {
    for (const auto& p : cfg.points) points.emplace_back(p.begin(), p.end());
  }
  const SeparationCertificate cert = BuildSeparationCertificate(points);
  const bool holds = CertificateInequalityHolds(cert);
  const bool disjoint = VerifyDisjointness(cert, cfg.samples, cfg.seed);

  CsvTable table{{"i", "j", "distance", "delta"}, {}};
  for (const SlabDirection& d : cert.directions) {
    table.rows.push_back({static_cast<std::int64_t>(d.from),
                          static_cast<std::int64_t>(d.to),
                          Distance(cert.points[d.from], cert.points[d.to]),
                          cert.delta});
  }
  EmitCsv(table, CsvPath(cfg));
  log << "points=" << cert.points.size()
      << " delta=" << FormatDouble(cert.delta)
      << " inequality=" << (holds ? "ok" : "violated")
      << " disjoint=" << (disjoint ? "true" : "false") << '\n';
}

}  // namespace

fs::path CsvPath(const RunConfig& cfg) { return Sibling(cfg, ".csv"); }

void Execute(const RunConfig& cfg, std::ostream& log) {
  Validate(cfg);
  fs::create_directories(cfg.out);
  switch (cfg.command) {
    case Command::kSolve:
      return RunSolve(cfg, log);
    case Command::kTable1:
    case Command::kTable2:
      return RunTable(cfg, log);
    case Command::kRecovery:
      return RunRecoveryCommand(cfg, log);
    case Command::kRates:
      return RunRates(cfg, log);
    case Command::kRatio:
      return RunRatio(cfg, log);
    case Command::kCertify:
      return RunCertify(cfg, log);
  }
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  try {
    const char* env = std::getenv("QVI_SEED");
    const std::optional<RunConfig> cfg = ParseConfig(
        argc, argv, env ? std::optional<std::string>(env) : std::nullopt);
    if (!cfg) return kExitOk;
    out << "# kernels: " << kernels::IsaName(kernels::Active().isa) << '\n';
    Execute(*cfg, out);
    out << "# wrote " << CsvPath(*cfg).string() << '\n';
    return kExitOk;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace qvi::cli
