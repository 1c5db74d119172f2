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

#include <vector>

#include <Eigen/Dense>

#include "equitensor/linalg.hpp"
#include "equitensor/o3.hpp"

namespace equitensor {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Sphere sampling made of `res_beta` necklaces around the y axis with
/// `res_alpha` equally spaced points each. Point (b, a) is
/// (sin beta sin alpha, cos beta, sin beta cos alpha).
///
/// cos(beta) sits on Gauss-Legendre nodes and alpha uses the trapezoidal rule,
/// which integrates products of two band-L signals exactly when
/// res_beta >= L + 1 and res_alpha >= 2L + 1.
class S2Grid {
 public:
  S2Grid(int res_beta, int res_alpha, int lmax);

  int res_beta() const noexcept { return res_beta_; }
  int res_alpha() const noexcept { return res_alpha_; }
  int lmax() const noexcept { return lmax_; }
  int num_points() const noexcept { return res_beta_ * res_alpha_; }

  const std::vector<double>& betas() const noexcept { return betas_; }
  const std::vector<double>& alphas() const noexcept { return alphas_; }
  /// Quadrature weight of one point on ring b (the ring weight times 2pi/res_alpha).
  double weight(int b) const { return weights_[static_cast<std::size_t>(b)]; }
  /// num_points x 3, row b*res_alpha + a.
  const Eigen::MatrixX3d& points() const noexcept { return points_; }
  /// num_points x (lmax+1)^2, `integral` normalization.
  const Matrix& sh() const noexcept { return sh_; }

  /// Quadrature of a (res_beta x res_alpha) sample array over the sphere.
  double integrate(const Matrix& samples) const;

  /// Smallest admissible resolutions for band limit L.
  static int min_res_beta(int lmax) { return lmax + 1; }
  static int min_res_alpha(int lmax) { return 2 * lmax + 1; }

 private:
  int res_beta_, res_alpha_, lmax_;
  std::vector<double> betas_, alphas_, weights_;
  Eigen::MatrixX3d points_;
  Matrix sh_;
};

/// Band-limited scalar signal: coefficients of Y^0..Y^lmax (`integral`
/// normalization), flat, laid out as Irreps::spherical_harmonics(lmax).
struct S2Signal {
  int lmax = 0;
  Vector coeffs;

  static S2Signal zeros(int lmax) { return {lmax, Vector::Zero((lmax + 1) * (lmax + 1))}; }
  /// Coefficients transform as v^l -> D^l(R) v^l under a rotation of the signal.
  S2Signal rotated(const EulerAngles& rotation) const;
};

/// f(x) = sum_l v^l . Y^l(x) at every grid point, shape (res_beta x res_alpha).
Matrix to_grid(const S2Signal& signal, const S2Grid& grid);

/// Quadrature inner products with Y^l_m, l <= lmax.
S2Signal from_grid(const Matrix& samples, const S2Grid& grid, int lmax);

/// max |<Y^l_m, Y^l'_m'> - delta| over all pairs with l, l' <= lmax, by quadrature on `grid`.
double sh_orthogonality_residual(int lmax, const S2Grid& grid);

}  // namespace equitensor
