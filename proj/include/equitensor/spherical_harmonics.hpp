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

#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "equitensor/irreps.hpp"
#include "equitensor/linalg.hpp"

namespace equitensor {

enum class SHNormalization {
  norm,       // |Y^l(x)| = 1 on the unit sphere
  component,  // |Y^l(x)|^2 = 2l+1
  integral,   // integral over the sphere of Y^l_m Y^l_m = 1
};

SHNormalization parse_sh_normalization(std::string_view name);
std::string_view to_string(SHNormalization n);

/// Factor turning `norm` values into `n` values for order l.
double sh_normalization_factor(int l, SHNormalization n);

/// Spherical harmonics of a batch of points: one row per point, columns laid out
/// as Irreps::spherical_harmonics(lmax), i.e. l = 0..lmax, 2l+1 entries each.
struct SHOutput {
  int lmax = 0;
  Matrix values;

  static int offset(int l) { return l * l; }
  /// Y^l of point `row`.
  Eigen::VectorXd block(Eigen::Index row, int l) const {
    return values.row(row).segment(offset(l), 2 * l + 1).transpose();
  }
};

/// Evaluates Y^0..Y^lmax at each row of `points` (n x 3, Cartesian).
///
/// Y^0 is constant and Y^1 is the input vector in the l=1 layout. Higher orders
/// follow Y^{l+1} proportional to the contraction of the (l+1, l, 1)
/// Clebsch-Gordan block with Y^l and Y^1, rescaled so that Y^l has unit norm on
/// the sphere before the requested normalization is applied.
///
/// With normalize = true the points are projected to the sphere first and a zero
/// vector raises DomainError. With normalize = false each Y^l is a homogeneous
/// polynomial of degree l: Y^l(c x) = c^l Y^l(x).
SHOutput spherical_harmonics(int lmax, const Eigen::Ref<const Eigen::MatrixX3d>& points,
                             bool normalize = true,
                             SHNormalization normalization = SHNormalization::norm);

/// Single point convenience; returns the flat (lmax+1)^2 vector.
Vector spherical_harmonics_point(int lmax, const Eigen::Vector3d& point, bool normalize = true,
                                 SHNormalization normalization = SHNormalization::norm);

}  // namespace equitensor
