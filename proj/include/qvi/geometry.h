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

// Feasible sets and their projections.
//
// Two set families are supported:
//   * Box: lo <= x <= hi componentwise, bounds may be +-infinity. Projection
//     is the exact metric projection (componentwise clamp).
//   * RelaxedL1Ball: the l1 ball {||x||_1 <= radius}, projected onto through
//     its supporting halfspace at an anchor point u:
//         C_u = { x : ||u||_1 - radius <= <sign(u), u - x> }.
//     C_u contains the ball, so this is a relaxed (outer) projection; the
//     result need not lie in the ball itself.

#include <optional>
#include <variant>

#include "qvi/linalg.h"

namespace qvi {

// Default slack for halfspace-containment post-checks.
inline constexpr double kProjectionTolerance = 1e-10;

class Box {
 public:
  // Throws InputError unless lo.size() == hi.size() and lo[i] <= hi[i].
  Box(Vector lo, Vector hi);

  // Same bounds in every one of `dim` coordinates.
  static Box Uniform(std::size_t dim, double lo, double hi);
  static Box Interval(double lo, double hi) { return Uniform(1, lo, hi); }

  std::size_t dim() const { return lo_.size(); }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  bool IsBounded() const;

  bool operator==(const Box&) const = default;

 private:
  Vector lo_;
  Vector hi_;
};

class RelaxedL1Ball {
 public:
  // radius >= 0; a zero radius is allowed for the all-zero signal.
  explicit RelaxedL1Ball(double radius);
  double radius() const { return radius_; }
  bool operator==(const RelaxedL1Ball&) const = default;

 private:
  double radius_;
};

using FeasibleSet = std::variant<Box, RelaxedL1Ball>;

// Anchor of the supporting halfspace plus the cached subgradient of
// ||.||_1 there, with sign(0) = 0.
class ProjectionContext {
 public:
  explicit ProjectionContext(ConstSpan anchor);

  const Vector& anchor() const { return anchor_; }
  const Vector& subgradient() const { return subgradient_; }
  double anchor_l1() const { return anchor_l1_; }
  double subgradient_sq_norm() const { return subgradient_sq_norm_; }

 private:
  Vector anchor_;
  Vector subgradient_;
  double anchor_l1_;
  double subgradient_sq_norm_;
};

// Componentwise median(lo, x, hi).
Vector ProjectBox(ConstSpan x, ConstSpan lo, ConstSpan hi);
Vector ProjectBox(ConstSpan x, const Box& box);

Vector ProjectRelaxedL1(ConstSpan x, const ProjectionContext& ctx,
                        double radius);

// Constraint value c(u) - <tau, u - x> of the relaxed halfspace at x; the
// point is inside C_u iff this is <= 0.
double RelaxedHalfspaceViolation(ConstSpan x, const ProjectionContext& ctx,
                                 double radius);

// `ctx` is required for RelaxedL1Ball and ignored for Box.
Vector Project(const FeasibleSet& set, ConstSpan x,
               const ProjectionContext* ctx = nullptr);

bool BoxContains(const Box& box, ConstSpan x, double tol);

// True if the set's projection needs an anchor.
bool NeedsAnchor(const FeasibleSet& set);

}  // namespace qvi
