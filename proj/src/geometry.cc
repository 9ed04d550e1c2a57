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

#include "qvi/geometry.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace qvi {

Box::Box(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  CheckSameSize(lo_, hi_, "Box");
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (std::isnan(lo_[i]) || std::isnan(hi_[i]) || lo_[i] > hi_[i]) {
      throw InputError("Box: lo[" + std::to_string(i) + "] > hi[" +
                       std::to_string(i) + "]");
    }
  }
}

Box Box::Uniform(std::size_t dim, double lo, double hi) {
  return Box(Vector(dim, lo), Vector(dim, hi));
}

bool Box::IsBounded() const {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(lo_.begin(), lo_.end(), finite) &&
         std::all_of(hi_.begin(), hi_.end(), finite);
}

RelaxedL1Ball::RelaxedL1Ball(double radius) : radius_(radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw InputError("RelaxedL1Ball: radius must be finite and >= 0");
  }
}

ProjectionContext::ProjectionContext(ConstSpan anchor)
    : anchor_(anchor.begin(), anchor.end()), subgradient_(anchor.size()) {
  for (std::size_t i = 0; i < anchor_.size(); ++i) {
    const double v = anchor_[i];
    subgradient_[i] = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
  }
  anchor_l1_ = L1Norm(anchor_);
  subgradient_sq_norm_ = SquaredNorm(subgradient_);
}

Vector ProjectBox(ConstSpan x, ConstSpan lo, ConstSpan hi) {
  CheckSameSize(x, lo, "ProjectBox");
  CheckSameSize(x, hi, "ProjectBox");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // max/min rather than std::clamp: infinite bounds are fine here.
    out[i] = std::min(std::max(x[i], lo[i]), hi[i]);
  }
  return out;
}

Vector ProjectBox(ConstSpan x, const Box& box) {
  return ProjectBox(x, box.lo(), box.hi());
}

double RelaxedHalfspaceViolation(ConstSpan x, const ProjectionContext& ctx,
                                 double radius) {
  CheckSameSize(x, ctx.anchor(), "RelaxedHalfspaceViolation");
  const double c = ctx.anchor_l1() - radius;
  return c - Dot(ctx.subgradient(), Subtract(ctx.anchor(), x));
}

Vector ProjectRelaxedL1(ConstSpan x, const ProjectionContext& ctx,
                        double radius) {
  CheckSameSize(x, ctx.anchor(), "ProjectRelaxedL1");
  const double c = ctx.anchor_l1() - radius;
  const double gap = Dot(ctx.subgradient(), Subtract(ctx.anchor(), x));
  if (c <= gap) return Vector(x.begin(), x.end());
  // c > gap with tau = 0 would need u = 0 and c = -radius > 0.
  if (ctx.subgradient_sq_norm() == 0.0) {
    throw InternalError(
        "ProjectRelaxedL1: zero subgradient outside the halfspace");
  }
  return AddScaled(x, (gap - c) / ctx.subgradient_sq_norm(),
                   ctx.subgradient());
}

Vector Project(const FeasibleSet& set, ConstSpan x,
               const ProjectionContext* ctx) {
  if (const auto* box = std::get_if<Box>(&set)) {
    return ProjectBox(x, *box);
  }
  const auto& ball = std::get<RelaxedL1Ball>(set);
  if (ctx == nullptr) {
    throw InputError("Project: relaxed l1 projection needs an anchor");
  }
  return ProjectRelaxedL1(x, *ctx, ball.radius());
}

bool BoxContains(const Box& box, ConstSpan x, double tol) {
  CheckSameSize(x, box.lo(), "BoxContains");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < box.lo()[i] - tol || x[i] > box.hi()[i] + tol) return false;
  }
  return true;
}

bool NeedsAnchor(const FeasibleSet& set) {
  return std::holds_alternative<RelaxedL1Ball>(set);
}

}  // namespace qvi
