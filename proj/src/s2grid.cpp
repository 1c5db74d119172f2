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

#include "equitensor/s2grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "equitensor/spherical_harmonics.hpp"

namespace equitensor {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre needs at least one node");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const unsigned un = static_cast<unsigned>(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev-like initial guess, largest root first
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double p = std::legendre(un, x);
      const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
      dp = n * (x * p - pm) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double p = std::legendre(un, x);
    const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
    dp = n * (x * p - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    nodes[static_cast<std::size_t>(i)] = -x;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
    weights[static_cast<std::size_t>(i)] = w;
  }
}

S2Grid::S2Grid(int res_beta, int res_alpha, int lmax)
    : res_beta_(res_beta), res_alpha_(res_alpha), lmax_(lmax) {
  if (lmax < 0) throw std::invalid_argument("band limit must be non-negative");
  if (res_beta < min_res_beta(lmax) || res_alpha < min_res_alpha(lmax)) {
    throw std::invalid_argument("grid " + std::to_string(res_beta) + "x" + std::to_string(res_alpha) +
                                " is too coarse for L=" + std::to_string(lmax) + ": need res_beta >= " +
                                std::to_string(min_res_beta(lmax)) + " and res_alpha >= " +
                                std::to_string(min_res_alpha(lmax)));
  }
  std::vector<double> nodes, ring_weights;
  gauss_legendre(res_beta, nodes, ring_weights);
  // beta ascending means cos(beta) descending
  const double dalpha = 2.0 * std::numbers::pi / res_alpha;
  for (int b = 0; b < res_beta; ++b) {
    const std::size_t src = static_cast<std::size_t>(res_beta - 1 - b);
    betas_.push_back(std::acos(nodes[src]));
    weights_.push_back(ring_weights[src] * dalpha);
  }
  for (int a = 0; a < res_alpha; ++a) alphas_.push_back(a * dalpha);

  points_.resize(num_points(), 3);
  for (int b = 0; b < res_beta; ++b) {
    const double sb = std::sin(betas_[b]), cb = std::cos(betas_[b]);
    for (int a = 0; a < res_alpha; ++a) {
      points_.row(b * res_alpha + a) << sb * std::sin(alphas_[a]), cb, sb * std::cos(alphas_[a]);
    }
  }
  sh_ = spherical_harmonics(lmax, points_, true, SHNormalization::integral).values;
}

double S2Grid::integrate(const Matrix& samples) const {
  if (samples.rows() != res_beta_ || samples.cols() != res_alpha_) {
    throw std::invalid_argument("sample array shape does not match the grid");
  }
  double total = 0.0;
  for (int b = 0; b < res_beta_; ++b) total += weights_[b] * samples.row(b).sum();
  return total;
}

S2Signal S2Signal::rotated(const EulerAngles& rotation) const {
  S2Signal out{lmax, coeffs};
  for (int l = 0; l <= lmax; ++l) {
    out.coeffs.segment(l * l, 2 * l + 1) = wigner_d(l, rotation) * coeffs.segment(l * l, 2 * l + 1);
  }
  return out;
}

Matrix to_grid(const S2Signal& signal, const S2Grid& grid) {
  if (signal.lmax > grid.lmax()) {
    throw std::invalid_argument("signal band limit " + std::to_string(signal.lmax) +
                                " exceeds grid band limit " + std::to_string(grid.lmax()));
  }
  const int n = (signal.lmax + 1) * (signal.lmax + 1);
  if (signal.coeffs.size() != n) throw std::invalid_argument("signal coefficient count mismatch");
  const Vector flat = grid.sh().leftCols(n) * signal.coeffs;
  Matrix samples(grid.res_beta(), grid.res_alpha());
  for (int b = 0; b < grid.res_beta(); ++b) {
    for (int a = 0; a < grid.res_alpha(); ++a) samples(b, a) = flat[b * grid.res_alpha() + a];
  }
  return samples;
}

S2Signal from_grid(const Matrix& samples, const S2Grid& grid, int lmax) {
  if (lmax > grid.lmax()) {
    throw std::invalid_argument("grid does not support band limit " + std::to_string(lmax));
  }
  if (samples.rows() != grid.res_beta() || samples.cols() != grid.res_alpha()) {
    throw std::invalid_argument("sample array shape does not match the grid");
  }
  const int n = (lmax + 1) * (lmax + 1);
  S2Signal out = S2Signal::zeros(lmax);
  for (int b = 0; b < grid.res_beta(); ++b) {
    for (int a = 0; a < grid.res_alpha(); ++a) {
      const int row = b * grid.res_alpha() + a;
      out.coeffs += grid.weight(b) * samples(b, a) * grid.sh().row(row).head(n).transpose();
    }
  }
  return out;
}

double sh_orthogonality_residual(int lmax, const S2Grid& grid) {
  if (lmax > grid.lmax()) throw std::invalid_argument("grid does not support this band limit");
  const int n = (lmax + 1) * (lmax + 1);
  Matrix gram = Matrix::Zero(n, n);
  for (int b = 0; b < grid.res_beta(); ++b) {
    const auto rows = grid.sh().middleRows(b * grid.res_alpha(), grid.res_alpha()).leftCols(n);
    gram += grid.weight(b) * rows.transpose() * rows;
  }
  return (gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace equitensor
