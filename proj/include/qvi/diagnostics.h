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

// Empirical checks run over solver traces: the growth ratio
// |<F(z_n), z_n - u*>| / ||z_n - u*||^(2+eps), separation certificates for
// finite sets of zeros, convergence-rate fits, the per-iteration Fejer
// inequality and the step-size bounds.

#include <cstdint>
#include <span>
#include <vector>

#include "qvi/linalg.h"
#include "qvi/operators.h"
#include "qvi/solver.h"

namespace qvi {

// Iterates closer than this to the reference are dropped from ratio series.
inline constexpr double kRatioDistanceFloor = 1e-14;

struct RatioEntry {
  std::size_t n;
  double ratio;
};

struct RatioSeries {
  std::vector<RatioEntry> values;
  double epsilon = 1.0;
  Vector reference;
  // Minimum over the retained entries; +inf when nothing was retained.
  double min_ratio = 0.0;
};

RatioSeries A5RatioSeries(const SolveTrace& trace, const Mapping& f,
                          ConstSpan reference, double epsilon);

struct SlabDirection {
  std::size_t from;
  std::size_t to;
  Vector r;  // (y_to - y_from) / ||y_to - y_from||
};

// Slab system around a finite set of points. Omega(y_i, delta) is the set of x
// with |<r, x - y_i>| < delta for every direction r in the certificate.
struct SeparationCertificate {
  std::vector<Vector> points;
  double delta = 0.0;
  std::vector<SlabDirection> directions;  // one per ordered pair

  bool InSlab(std::size_t i, ConstSpan x) const;
};

// delta = min pairwise distance / 4, one direction per ordered pair.
// Throws InputError on fewer than two points, mixed dimensions or duplicates.
SeparationCertificate BuildSeparationCertificate(std::vector<Vector> points);

// Unit directions (to 1e-12) and 4 delta <= |<r_ij, y_j - y_i>| for all pairs.
bool CertificateInequalityHolds(const SeparationCertificate& cert);

// For every ordered pair (i, j) draws `samples` points x = y_i + t r_ij + w
// with |t| < delta and w orthogonal to r_ij, and checks that none of them has
// |<r_ij, x - y_j>| < delta. Returns true iff no sample lands in both slabs.
bool VerifyDisjointness(const SeparationCertificate& cert, std::size_t samples,
                        std::uint64_t seed);

inline constexpr std::size_t kDefaultTailWindow = 20;

struct RateEstimate {
  double q_factor = 0.0;         // median of e_{n+1} / e_n over the tail
  double sublinear_order = 0.0;  // -slope of log e_n against log n
  std::size_t tail_window = 0;
};

// `errors` must be strictly positive with size >= tail_window >= 3.
RateEstimate EstimateRates(std::span<const double> errors,
                           std::size_t tail_window = kDefaultTailWindow);

struct FejerAuditResult {
  double worst_slack = 0.0;
  std::size_t worst_iteration = 0;
  std::vector<double> slacks;
};

// slack_n = ||u_{n+1} - u||^2 - ||u_n - u||^2
//           + (1 - mu^2 lambda_n^2 / lambda_{n+1}^2) ||z_n - u_n||^2
//           + 2 lambda_n <F(z_n), z_n - u>
// recomputed from the trace with fresh operator evaluations. Nonpositive (up
// to rounding) for u in S_D.
FejerAuditResult FejerAudit(const SolveTrace& trace, const VectorField& f,
                            ConstSpan u, double mu);
FejerAuditResult FejerAudit(const SolveTrace& trace, const Mapping& f,
                            ConstSpan u, double mu);

inline constexpr double kStepBoundTolerance = 1e-9;
inline constexpr double kUpdateRuleTolerance = 1e-12;

struct StepSizeAudit {
  double lower_bound = 0.0;  // min(lambda1, mu / L)
  // Most negative lambda_n - lower_bound and most positive
  // lambda_n - (lambda1 + sum_{k<n} xi_k) over the trace.
  double worst_lower_gap = 0.0;
  double worst_upper_gap = 0.0;
  std::size_t lower_violations = 0;
  std::size_t upper_violations = 0;
  // Iterations where lambda_{n+1} != lambda_n + xi_n and
  // lambda_{n+1} ||F(u_n) - F(z_n)|| > mu ||u_n - z_n|| + 1e-12.
  std::size_t update_rule_violations = 0;

  bool BoundsHold() const { return lower_violations == 0 && upper_violations == 0; }
};

StepSizeAudit AuditStepSizes(const SolveTrace& trace, const Mapping& f,
                             const SolverConfig& cfg, double lipschitz);

// max_n ||F(u_n) - F(z_n)|| / ||u_n - z_n|| along the trace.
double TraceLipschitz(const SolveTrace& trace, const Mapping& f);

// max_n max_i |u_{n+1} - z_n - lambda_n (F(u_n) - F(z_n))|_i.
double TsengIdentityDefect(const SolveTrace& trace, const Mapping& f);

}  // namespace qvi
