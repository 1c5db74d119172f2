/* Copyright 2026 The equitensor Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "equitensor/spherical_harmonics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "equitensor/cache.hpp"
#include "equitensor/clebsch_gordan.hpp"
#include "equitensor/errors.hpp"
#include "equitensor/o3.hpp"

namespace equitensor {

namespace {

// Step from order l to l+1: nonzero entries of C^{l+1,l,1} and the factor that
// keeps the result at unit norm on the sphere.
struct RecursionStep {
  std::vector<CGEntry> entries;
  double scale = 1.0;
};

Vector raw_step(const std::vector<CGEntry>& entries, int l, const Vector& prev, const Vector3& x) {
  Vector next = Vector::Zero(2 * l + 3);
  for (const auto& e : entries) next[e.i] += e.value * prev[e.j] * x[e.k];
  return next;
}

const RecursionStep& recursion_step(int l);

// Norm-normalized Y^l at a fixed unit vector; used only to calibrate `scale`.
Vector reference_value(int l, const Vector3& unit) {
  Vector y = Vector::Ones(1);
  for (int k = 0; k < l; ++k) {
    if (k == 0) {
      y = unit;
    } else {
      const RecursionStep& step = recursion_step(k);
      y = step.scale * raw_step(step.entries, k, y, unit);
    }
  }
  return y;
}

const RecursionStep& recursion_step(int l) {
  static ConcurrentCache<int, RecursionStep> cache;
  return cache.get_or_compute(l, [l] {
    RecursionStep step{cg_entries(l + 1, l, 1), 1.0};
    // The norm of an equivariant output is rotation invariant, so one point suffices.
    const Vector3 unit = to_irrep_basis(Vector3(0.0, 0.0, 1.0));
    const Vector y = reference_value(l, unit);
    step.scale = 1.0 / raw_step(step.entries, l, y, unit).norm();
    return step;
  });
}

}  // namespace

SHNormalization parse_sh_normalization(std::string_view name) {
  if (name == "norm") return SHNormalization::norm;
  if (name == "component") return SHNormalization::component;
  if (name == "integral") return SHNormalization::integral;
  throw std::invalid_argument("unknown normalization '" + std::string(name) +
                              "', expected norm, component or integral");
}

std::string_view to_string(SHNormalization n) {
  switch (n) {
    case SHNormalization::norm:
      return "norm";
    case SHNormalization::component:
      return "component";
    case SHNormalization::integral:
      return "integral";
  }
  return "norm";
}

double sh_normalization_factor(int l, SHNormalization n) {
  switch (n) {
    case SHNormalization::norm:
      return 1.0;
    case SHNormalization::component:
      return std::sqrt(2.0 * l + 1.0);
    case SHNormalization::integral:
      return std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi));
  }
  return 1.0;
}

SHOutput spherical_harmonics(int lmax, const Eigen::Ref<const Eigen::MatrixX3d>& points,
                             bool normalize, SHNormalization normalization) {
  if (lmax < 0) throw std::invalid_argument("lmax must be non-negative");
  std::vector<const RecursionStep*> steps;
  for (int l = 1; l < lmax; ++l) steps.push_back(&recursion_step(l));
  std::vector<double> factors;
  for (int l = 0; l <= lmax; ++l) factors.push_back(sh_normalization_factor(l, normalization));

  SHOutput out{lmax, Matrix((points.rows()), (lmax + 1) * (lmax + 1))};
  for (Eigen::Index row = 0; row < points.rows(); ++row) {
    Vector3 x = to_irrep_basis(points.row(row).transpose());
    if (normalize) {
      const double r = x.norm();
      if (r == 0.0) throw DomainError("cannot normalize a zero vector");
      x /= r;
    }
    out.values(row, 0) = factors[0];
    if (lmax == 0) continue;
    Vector y = x;
    out.values.row(row).segment(1, 3) = factors[1] * y.transpose();
    for (int l = 1; l < lmax; ++l) {
      const RecursionStep& step = *steps[l - 1];
      y = step.scale * raw_step(step.entries, l, y, x);
      out.values.row(row).segment(SHOutput::offset(l + 1), 2 * l + 3) =
          factors[l + 1] * y.transpose();
    }
  }
  return out;
}

Vector spherical_harmonics_point(int lmax, const Eigen::Vector3d& point, bool normalize,
                                 SHNormalization normalization) {
  const Eigen::MatrixX3d points = point.transpose();
  return spherical_harmonics(lmax, points, normalize, normalization).values.row(0).transpose();
}

}  // namespace equitensor
