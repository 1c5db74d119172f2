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

#include <array>
#include <random>

#include <Eigen/Dense>

#include "equitensor/irreps.hpp"
#include "equitensor/linalg.hpp"

namespace equitensor {

using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

/// Y-X-Y Euler angles: R = R_y(alpha) R_x(beta) R_y(gamma).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Element of O(3): a rotation, optionally followed by the inversion x -> -x.
/// Inversion commutes with every rotation.
struct O3Element {
  EulerAngles rotation;
  bool inversion = false;

  /// The 3x3 matrix acting on Cartesian vectors (det = -1 when inverted).
  Matrix3 matrix() const;
  O3Element inverse() const;
  /// Group product: (*this) applied after `other`.
  O3Element operator*(const O3Element& other) const;
};

Matrix3 rot_x(double angle);
Matrix3 rot_y(double angle);
Matrix3 rot_z(double angle);

Matrix3 rot_matrix(const EulerAngles& angles);

/// Inverse of rot_matrix for a proper rotation. beta lands in [0, pi].
EulerAngles matrix_to_angles(const Matrix3& rotation);

/// Euler angles of R(a) R(b).
EulerAngles compose(const EulerAngles& a, const EulerAngles& b);

EulerAngles rand_rotation(std::mt19937_64& rng);

/// Haar-random rotation with a fair-coin inversion flag.
O3Element rand_o3(std::mt19937_64& rng);

/// Position of each Cartesian axis (x, y, z) in the l=1 irrep layout.
/// With y as the axis whose generator is diagonal, the m = -1, 0, +1 components
/// come out as x, y, z, so the permutation is the identity.
inline constexpr std::array<int, 3> kVectorComponentOrder{0, 1, 2};

/// Cartesian vector -> components in the l=1 irrep layout.
Vector3 to_irrep_basis(const Vector3& cartesian);

/// Unitary Q with z = Q x, where x holds real-basis coefficients (index m+l)
/// and z the complex-basis ones:
///   z_m = (-i)^l (x_|m| - i x_-|m|)/sqrt2          (m < 0)
///   z_0 = (-i)^l x_0
///   z_m = (-1)^m (-i)^l (x_|m| + i x_-|m|)/sqrt2   (m > 0)
CMatrix complex_to_real(int l);

/// Standard complex angular-momentum generators for order l in the basis where
/// the y generator is diag(i m), built from the ladder operators. Index 0/1/2 = x/y/z.
std::array<CMatrix, 3> complex_generators(int l);

/// Real antisymmetric generators of infinitesimal rotations about x, y and z.
struct Generators {
  Matrix x;
  Matrix y;
  Matrix z;

  const Matrix& operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  /// Generator about the axis `n` (n_x J_x + n_y J_y + n_z J_z).
  Matrix about(const Vector3& n) const { return n.x() * x + n.y() * y + n.z() * z; }
};

/// Cached; the reference stays valid for the program lifetime.
const Generators& generators(int l);

/// exp(angle * J) for the real generator of order l about `axis` (0, 1, 2).
Matrix generator_exp(int l, int axis, double angle);

/// Real Wigner D matrix exp(alpha J_y) exp(beta J_x) exp(gamma J_y).
Matrix wigner_d(int l, const EulerAngles& angles);

/// Representation of an O(3) element on one irrep: wigner_d times p under inversion.
Matrix d_o3(const Irrep& ir, const O3Element& g);

/// Block-diagonal representation on a direct sum of irreps (multiplicities repeated).
Matrix d_irreps(const Irreps& irreps, const O3Element& g);

}  // namespace equitensor
