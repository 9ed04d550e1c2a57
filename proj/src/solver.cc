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

#include "qvi/solver.h"

#include <cmath>
#include <string>
#include <type_traits>

namespace qvi {
namespace {

std::size_t SetDim(const FeasibleSet& set) {
  if (const auto* box = std::get_if<Box>(&set)) return box->dim();
  return 0;  // any dimension
}

struct StopCheck {
  double error;
  bool stop;
  SolveStatus status;
};

StopCheck EvaluateStop(const StoppingRule& rule, ConstSpan u, ConstSpan u_next,
                       ConstSpan fz, double residual) {
  if (const auto* r = std::get_if<SquaredStep>(&rule)) {
    const double e = SquaredDistance(u_next, u);
    return {e, e < r->tol, SolveStatus::kConverged};
  }
  if (const auto* r = std::get_if<StepNorm>(&rule)) {
    const double e = Distance(u_next, u);
    return {e, e < r->tol, SolveStatus::kConverged};
  }
  if (const auto* r = std::get_if<ExactTermination>(&rule)) {
    const double e = std::min(residual, Norm(fz));
    return {e, e <= r->tol, SolveStatus::kTerminatedExact};
  }
  const auto& r = std::get<MseToReference>(rule);
  const double e =
      SquaredDistance(u_next, r.reference) / static_cast<double>(u.size());
  return {e, e < r.tol, SolveStatus::kConverged};
}

}  // namespace

void XiSequence::Validate() const {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw InputError("xi_scale must be finite and >= 0");
  }
  if (!(exponent > 1.0) || !std::isfinite(exponent)) {
    throw InputError("xi_exp must be finite and > 1");
  }
}

double Xi(std::size_t n, const XiSequence& xi) {
  return xi.scale / std::pow(static_cast<double>(n + 1), xi.exponent);
}

double XiPartialSum(const XiSequence& xi, std::size_t count) {
  double sum = 0.0;
  for (std::size_t k = 1; k <= count; ++k) sum += Xi(k, xi);
  return sum;
}

double XiTotalBound(const XiSequence& xi, std::size_t count) {
  const double p = xi.exponent;
  const double tail = xi.scale * p /
                      ((p - 1.0) * std::pow(static_cast<double>(count + 1), p - 1.0));
  return XiPartialSum(xi, count) + tail;
}

void SolverConfig::Validate() const {
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) {
    throw InputError("lambda1 must be finite and > 0");
  }
  if (!(mu > 0.0 && mu < 1.0)) throw InputError("mu must lie in (0, 1)");
  xi.Validate();
  if (max_iters == 0) throw InputError("max_iters must be >= 1");
  std::visit(
      [](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, ExactTermination>) {
          if (!(rule.tol >= 0.0)) throw InputError("tol must be >= 0");
        } else {
          if (!(rule.tol > 0.0)) throw InputError("tol must be > 0");
        }
      },
      stop);
}

std::string_view StatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kMaxIters:
      return "max_iters";
    case SolveStatus::kTerminatedExact:
      return "terminated_exact";
  }
  return "unknown";
}

double UpdateStepSize(double lambda, double xi, ConstSpan u, ConstSpan z,
                      ConstSpan fu, ConstSpan fz, double mu) {
  const double grown = lambda + xi;
  const double denom = Distance(fu, fz);
  if (denom > 0.0) return std::min(mu * Distance(u, z) / denom, grown);
  return grown;
}

TsengStepResult TsengStep(ConstSpan u, double lambda, const Mapping& f,
                          const FeasibleSet& set, std::size_t n,
                          const SolverConfig& cfg) {
  TsengStepResult out;
  out.fu = f(u);
  if (!AllFinite(out.fu)) throw NumericError("non-finite F(u_n)", n);

  const Vector forward = AddScaled(u, -lambda, out.fu);
  if (NeedsAnchor(set)) {
    const ProjectionContext ctx(u);
    out.z = Project(set, forward, &ctx);
  } else {
    out.z = Project(set, forward);
  }

  out.fz = f(out.z);
  if (!AllFinite(out.fz)) throw NumericError("non-finite F(z_n)", n);

  out.u_next = AddScaled(out.z, lambda, Subtract(out.fu, out.fz));
  if (!AllFinite(out.u_next)) throw NumericError("non-finite u_{n+1}", n);

  out.lambda_next =
      UpdateStepSize(lambda, Xi(n, cfg.xi), u, out.z, out.fu, out.fz, cfg.mu);
  return out;
}

SolveResult Solve(const Mapping& f, const FeasibleSet& set, ConstSpan u1,
                  const SolverConfig& cfg) {
  cfg.Validate();
  if (u1.size() != f.dim()) {
    throw InputError("Solve: initial point has dimension " +
                     std::to_string(u1.size()) + ", mapping expects " +
                     std::to_string(f.dim()));
  }
  if (const std::size_t d = SetDim(set); d != 0 && d != u1.size()) {
    throw InputError("Solve: feasible set dimension mismatch");
  }
  if (const auto* mse = std::get_if<MseToReference>(&cfg.stop)) {
    CheckSameSize(u1, mse->reference, "Solve: MSE reference");
  }
  if (!AllFinite(u1)) throw InputError("Solve: initial point is not finite");

  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  if (cfg.trace_level == TraceLevel::kFull) result.trace.emplace();

  Vector u(u1.begin(), u1.end());
  double lambda = cfg.lambda1;
  for (std::size_t n = 1; n <= cfg.max_iters; ++n) {
    TsengStepResult step = TsengStep(u, lambda, f, set, n, cfg);
    const double residual = Distance(u, step.z);
    const StopCheck check =
        EvaluateStop(cfg.stop, u, step.u_next, step.fz, residual);

    if (result.trace) {
      result.trace->records.push_back({n, u, step.z, step.u_next, lambda,
                                       step.lambda_next, check.error,
                                       residual});
    }
    result.iterations = n;
    if (check.stop) {
      result.status = check.status;
      result.final_point = check.status == SolveStatus::kTerminatedExact
                               ? std::move(step.z)
                               : std::move(step.u_next);
      result.wall_time_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      return result;
    }
    u = std::move(step.u_next);
    lambda = step.lambda_next;
  }
  result.status = SolveStatus::kMaxIters;
  result.final_point = std::move(u);
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace qvi
