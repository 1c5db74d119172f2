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

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "equitensor/irreps.hpp"
#include "equitensor/linalg.hpp"
#include "equitensor/o3.hpp"
#include "equitensor/tensor_product.hpp"

namespace equitensor {

// ---------------------------------------------------------------------------
// Equivariance checking

/// A function of several irreps-typed inputs returning one irreps-typed output.
using EquivariantFn = std::function<Vector(const std::vector<Vector>&)>;

struct TrialResult {
  O3Element g;
  double residual = 0.0;
};

struct EquivarianceReport {
  double max_residual = 0.0;
  double tol = 0.0;
  int worst_trial = -1;
  std::vector<TrialResult> trials;

  bool passed() const noexcept { return max_residual <= tol; }
  std::string summary() const;
};

/// Thrown by assert_equivariant; carries the failing report.
class EquivarianceFailure : public std::runtime_error {
 public:
  explicit EquivarianceFailure(EquivarianceReport report);
  const EquivarianceReport& report() const noexcept { return report_; }

 private:
  EquivarianceReport report_;
};

/// For each trial draws a random O3Element g (inversion included) and standard
/// normal inputs x, and measures max |f(D_in(g) x) - D_out(g) f(x)|. Trial t uses
/// its own generator seeded from (seed, t), so reports are reproducible.
EquivarianceReport check_equivariance(const EquivariantFn& f, const std::vector<Irreps>& irreps_in,
                                      const Irreps& irreps_out, int trials, double tol,
                                      std::uint64_t seed = 0);

/// check_equivariance, throwing EquivarianceFailure when the residual exceeds tol.
EquivarianceReport assert_equivariant(const EquivariantFn& f, const std::vector<Irreps>& irreps_in,
                                      const Irreps& irreps_out, int trials, double tol,
                                      std::uint64_t seed = 0);

/// Standard normal vector of size n.
Vector random_normal(int n, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Point clouds

struct EdgeList {
  std::vector<int> src;
  std::vector<int> dst;

  std::size_t size() const noexcept { return src.size(); }
};

struct PointCloud {
  Eigen::MatrixX3d positions;
  EdgeList edges;
};

/// All ordered pairs (a, b) with 0 < |pos_a - pos_b| < r_max, in ascending (a, b) order.
EdgeList radius_graph(const Eigen::Ref<const Eigen::MatrixX3d>& positions, double r_max);

/// Row e of `values` added to row dst[e] of the result, edges taken in ascending order.
Matrix scatter_sum(const Eigen::Ref<const Matrix>& values, const std::vector<int>& dst,
                   int num_nodes);

/// Parameterized equivariant polynomial of a point cloud:
/// spherical harmonics (lmax 3, component normalization, unnormalized inputs) of
/// the edge vectors, two neighbour-aggregated fully connected tensor products
/// through "64x0e + 24x1e + 24x1o + 16x2e + 16x2o", and a sum over edges.
/// It is rotation and parity equivariant and translation invariant.
class Polynomial {
 public:
  explicit Polynomial(const Irreps& irreps_out);

  const Irreps& irreps_sh() const noexcept { return irreps_sh_; }
  const Irreps& irreps_mid() const noexcept { return irreps_mid_; }
  const Irreps& irreps_out() const noexcept { return tp2_.irreps_out(); }
  const TensorProductSpec& tp1() const noexcept { return tp1_; }
  const TensorProductSpec& tp2() const noexcept { return tp2_; }
  /// tp1 weights followed by tp2 weights.
  int weight_numel() const noexcept { return tp1_.weight_numel() + tp2_.weight_numel(); }

  /// `edge_transform`, when set, is applied to each edge vector before the
  /// spherical harmonics; used to build deliberately broken variants.
  Vector forward(const Eigen::Ref<const Eigen::MatrixX3d>& positions, double max_radius,
                 double num_neigh, double num_nodes, const Vector& weights,
                 const std::function<Vector3(const Vector3&)>& edge_transform = {}) const;

 private:
  Irreps irreps_sh_;
  Irreps irreps_mid_;
  TensorProductSpec tp1_;
  TensorProductSpec tp2_;
};

// ---------------------------------------------------------------------------
// Normalization

using ScalarFn = std::function<double(double)>;

/// E[phi(Z)^2] for Z ~ N(0, 1) by Gauss-Hermite quadrature with `nodes` points.
double gaussian_second_moment(const ScalarFn& phi, int nodes = 64);

/// c * phi with c = E[phi(Z)^2]^(-1/2). Throws DomainError for a zero function.
ScalarFn rescale_activation(ScalarFn phi, int nodes = 64);

/// Mean over rows of |x|^2 / dim(irreps): 1 for component-normalized data.
double component_norm_statistic(const Eigen::Ref<const Matrix>& samples, const Irreps& irreps);

}  // namespace equitensor
