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

#include "qvi/diagnostics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qvi {
namespace {

void RequireTrace(const SolveTrace& trace, const char* op) {
  if (trace.empty()) {
    throw InputError(std::string(op) + ": trace has no recorded iterations");
  }
}

double Median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

RatioSeries A5RatioSeries(const SolveTrace& trace, const Mapping& f,
                          ConstSpan reference, double epsilon) {
  RequireTrace(trace, "A5RatioSeries");
  if (!(epsilon >= 0.0)) throw InputError("A5RatioSeries: epsilon must be >= 0");
  RatioSeries series;
  series.epsilon = epsilon;
  series.reference.assign(reference.begin(), reference.end());
  series.min_ratio = std::numeric_limits<double>::infinity();
  for (const IterationRecord& rec : trace.records) {
    const Vector offset = Subtract(rec.z, reference);
    const double dist = Norm(offset);
    if (dist < kRatioDistanceFloor) continue;
    const double ratio =
        std::fabs(Dot(f(rec.z), offset)) / std::pow(dist, 2.0 + epsilon);
    series.values.push_back({rec.n, ratio});
    series.min_ratio = std::min(series.min_ratio, ratio);
  }
  return series;
}

bool SeparationCertificate::InSlab(std::size_t i, ConstSpan x) const {
  const Vector offset = Subtract(x, points.at(i));
  return std::all_of(directions.begin(), directions.end(),
                     [&](const SlabDirection& d) {
                       return std::fabs(Dot(d.r, offset)) < delta;
                     });
}

SeparationCertificate BuildSeparationCertificate(std::vector<Vector> points) {
  if (points.size() < 2) {
    throw InputError("BuildSeparationCertificate: need at least two points");
  }
  const std::size_t dim = points.front().size();
  for (const Vector& p : points) {
    if (p.size() != dim || dim == 0) {
      throw InputError("BuildSeparationCertificate: inconsistent dimensions");
    }
  }
  SeparationCertificate cert;
  double min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      Vector diff = Subtract(points[j], points[i]);
      const double dist = Norm(diff);
      if (dist == 0.0) {
        throw InputError("BuildSeparationCertificate: duplicate points " +
                         std::to_string(i) + " and " + std::to_string(j));
      }
      for (double& v : diff) v /= dist;
      cert.directions.push_back({i, j, std::move(diff)});
      min_dist = std::min(min_dist, dist);
    }
  }
  cert.delta = 0.25 * min_dist;
  cert.points = std::move(points);
  return cert;
}

bool CertificateInequalityHolds(const SeparationCertificate& cert) {
  for (const SlabDirection& d : cert.directions) {
    if (std::fabs(Norm(d.r) - 1.0) > 1e-12) return false;
    const Vector gap = Subtract(cert.points[d.to], cert.points[d.from]);
    const double projected = std::fabs(Dot(d.r, gap));
    if (std::fabs(projected - Norm(gap)) > 1e-12 * (1.0 + Norm(gap))) {
      return false;
    }
    if (4.0 * cert.delta > projected) return false;
  }
  return true;
}

bool VerifyDisjointness(const SeparationCertificate& cert, std::size_t samples,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> along(-cert.delta, cert.delta);
  std::normal_distribution<double> normal;
  for (const SlabDirection& d : cert.directions) {
    const Vector& from = cert.points[d.from];
    const Vector& to = cert.points[d.to];
    const double spread = 4.0 * Distance(from, to);
    for (std::size_t s = 0; s < samples; ++s) {
      // Component orthogonal to r, of random length up to `spread`.
      Vector w(from.size());
      for (double& v : w) v = normal(rng);
      Axpy(-Dot(w, d.r), d.r, w);
      const double wn = Norm(w);
      if (wn > 0.0) {
        const double scale = spread * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / wn;
        for (double& v : w) v *= scale;
      }
      Vector x = from;
      Axpy(along(rng), d.r, x);
      Axpy(1.0, w, x);
      // Only samples that really sit in the source slab count.
      if (std::fabs(Dot(d.r, Subtract(x, from))) >= cert.delta) continue;
      if (std::fabs(Dot(d.r, Subtract(x, to))) < cert.delta) return false;
    }
  }
  return true;
}

RateEstimate EstimateRates(std::span<const double> errors,
                           std::size_t tail_window) {
  if (tail_window < 3) throw InputError("EstimateRates: tail_window must be >= 3");
  if (errors.size() < tail_window) {
    throw InputError("EstimateRates: need at least tail_window errors");
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      throw InputError("EstimateRates: error " + std::to_string(i) +
                       " is not strictly positive");
    }
  }
  const std::size_t first = errors.size() - tail_window;

  std::vector<double> ratios;
  ratios.reserve(tail_window - 1);
  for (std::size_t i = first; i + 1 < errors.size(); ++i) {
    ratios.push_back(errors[i + 1] / errors[i]);
  }

  // Least-squares slope of log e against log n, n 1-based.
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = first; i < errors.size(); ++i) {
    mx += std::log(static_cast<double>(i + 1));
    my += std::log(errors[i]);
  }
  mx /= static_cast<double>(tail_window);
  my /= static_cast<double>(tail_window);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = first; i < errors.size(); ++i) {
    const double dx = std::log(static_cast<double>(i + 1)) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }

  RateEstimate est;
  est.q_factor = Median(std::move(ratios));
  est.sublinear_order = -sxy / sxx;
  est.tail_window = tail_window;
  return est;
}

FejerAuditResult FejerAudit(const SolveTrace& trace, const VectorField& f,
                            ConstSpan u, double mu) {
  RequireTrace(trace, "FejerAudit");
  FejerAuditResult out;
  out.worst_slack = -std::numeric_limits<double>::infinity();
  out.slacks.reserve(trace.size());
  for (const IterationRecord& rec : trace.records) {
    const double ratio = mu * rec.lambda / rec.lambda_next;
    const double slack = SquaredDistance(rec.u_next, u) -
                         SquaredDistance(rec.u, u) +
                         (1.0 - ratio * ratio) * SquaredDistance(rec.z, rec.u) +
                         2.0 * rec.lambda * Dot(f(rec.z), Subtract(rec.z, u));
    out.slacks.push_back(slack);
    if (slack > out.worst_slack) {
      out.worst_slack = slack;
      out.worst_iteration = rec.n;
    }
  }
  return out;
}

FejerAuditResult FejerAudit(const SolveTrace& trace, const Mapping& f,
                            ConstSpan u, double mu) {
  return FejerAudit(trace, f.AsField(), u, mu);
}

StepSizeAudit AuditStepSizes(const SolveTrace& trace, const Mapping& f,
                             const SolverConfig& cfg, double lipschitz) {
  RequireTrace(trace, "AuditStepSizes");
  if (!(lipschitz > 0.0)) throw InputError("AuditStepSizes: lipschitz must be > 0");
  StepSizeAudit audit;
  audit.lower_bound = std::min(cfg.lambda1, cfg.mu / lipschitz);

  audit.worst_lower_gap = std::numeric_limits<double>::infinity();
  audit.worst_upper_gap = -std::numeric_limits<double>::infinity();

  // lambda_n is bounded above by lambda1 + sum_{k<n} xi_k.
  double xi_mass = 0.0;
  auto check = [&](double lambda) {
    const double lower_gap = lambda - audit.lower_bound;
    const double upper_gap = lambda - (cfg.lambda1 + xi_mass);
    audit.worst_lower_gap = std::min(audit.worst_lower_gap, lower_gap);
    audit.worst_upper_gap = std::max(audit.worst_upper_gap, upper_gap);
    if (lower_gap < -kStepBoundTolerance) ++audit.lower_violations;
    if (upper_gap > kStepBoundTolerance) ++audit.upper_violations;
  };
  check(trace.records.front().lambda);

  for (const IterationRecord& rec : trace.records) {
    xi_mass += Xi(rec.n, cfg.xi);
    check(rec.lambda_next);
    const double grown = rec.lambda + Xi(rec.n, cfg.xi);
    if (rec.lambda_next == grown) continue;
    const double lhs = rec.lambda_next * Distance(f(rec.u), f(rec.z));
    if (lhs > cfg.mu * Distance(rec.u, rec.z) + kUpdateRuleTolerance) {
      ++audit.update_rule_violations;
    }
  }
  return audit;
}

double TraceLipschitz(const SolveTrace& trace, const Mapping& f) {
  double best = 0.0;
  for (const IterationRecord& rec : trace.records) {
    const double step = Distance(rec.u, rec.z);
    if (step == 0.0) continue;
    best = std::max(best, Distance(f(rec.u), f(rec.z)) / step);
  }
  return best;
}

double TsengIdentityDefect(const SolveTrace& trace, const Mapping& f) {
  double worst = 0.0;
  for (const IterationRecord& rec : trace.records) {
    const Vector correction = Subtract(f(rec.u), f(rec.z));
    for (std::size_t i = 0; i < rec.u_next.size(); ++i) {
      const double defect =
          rec.u_next[i] - rec.z[i] - rec.lambda * correction[i];
      worst = std::max(worst, std::fabs(defect));
    }
  }
  return worst;
}

}  // namespace qvi
