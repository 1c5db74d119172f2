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

#include "equitensor/harness.hpp"

#include <cmath>
#include <sstream>

#include "equitensor/errors.hpp"
#include "equitensor/spherical_harmonics.hpp"

namespace equitensor {

std::string EquivarianceReport::summary() const {
  std::ostringstream os;
  os << (passed() ? "PASS" : "FAIL") << ": max residual " << max_residual << " over "
     << trials.size() << " trials (tol " << tol << ")";
  if (!passed() && worst_trial >= 0) {
    const auto& g = trials[static_cast<std::size_t>(worst_trial)].g;
    os << "; worst g = (alpha " << g.rotation.alpha << ", beta " << g.rotation.beta << ", gamma "
       << g.rotation.gamma << ", inversion " << (g.inversion ? "yes" : "no") << ")";
  }
  return os.str();
}

EquivarianceFailure::EquivarianceFailure(EquivarianceReport report)
    : std::runtime_error("equivariance check failed: " + report.summary()),
      report_(std::move(report)) {}

Vector random_normal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

EquivarianceReport check_equivariance(const EquivariantFn& f, const std::vector<Irreps>& irreps_in,
                                      const Irreps& irreps_out, int trials, double tol,
                                      std::uint64_t seed) {
  EquivarianceReport report;
  report.tol = tol;
  for (int t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    const O3Element g = rand_o3(rng);
    std::vector<Vector> inputs, moved;
    for (const auto& irreps : irreps_in) {
      inputs.push_back(random_normal(irreps.dim(), rng));
      moved.push_back(d_irreps(irreps, g) * inputs.back());
    }
    const Vector lhs = f(moved);
    const Vector rhs = d_irreps(irreps_out, g) * f(inputs);
    if (lhs.size() != irreps_out.dim() || rhs.size() != irreps_out.dim()) {
      throw std::invalid_argument("function output does not match the declared irreps");
    }
    const double residual = (lhs - rhs).cwiseAbs().maxCoeff();
    report.trials.push_back({g, residual});
    if (report.worst_trial < 0 || residual > report.max_residual) {
      report.max_residual = residual;
      report.worst_trial = t;
    }
  }
  return report;
}

EquivarianceReport assert_equivariant(const EquivariantFn& f, const std::vector<Irreps>& irreps_in,
                                      const Irreps& irreps_out, int trials, double tol,
                                      std::uint64_t seed) {
  EquivarianceReport report = check_equivariance(f, irreps_in, irreps_out, trials, tol, seed);
  if (!report.passed()) throw EquivarianceFailure(std::move(report));
  return report;
}

EdgeList radius_graph(const Eigen::Ref<const Eigen::MatrixX3d>& positions, double r_max) {
  if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
  EdgeList edges;
  const Eigen::Index n = positions.rows();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double r = (positions.row(a) - positions.row(b)).norm();
      if (r < r_max && r > 0.0) {
        edges.src.push_back(static_cast<int>(a));
        edges.dst.push_back(static_cast<int>(b));
      }
    }
  }
  return edges;
}

Matrix scatter_sum(const Eigen::Ref<const Matrix>& values, const std::vector<int>& dst,
                   int num_nodes) {
  if (static_cast<std::size_t>(values.rows()) != dst.size()) {
    throw std::invalid_argument("one destination per value row expected");
  }
  Matrix out = Matrix::Zero(num_nodes, values.cols());
  for (std::size_t e = 0; e < dst.size(); ++e) {
    if (dst[e] < 0 || dst[e] >= num_nodes) throw std::out_of_range("scatter index out of range");
    out.row(dst[e]) += values.row(static_cast<Eigen::Index>(e));
  }
  return out;
}

Polynomial::Polynomial(const Irreps& irreps_out)
    : irreps_sh_(Irreps::spherical_harmonics(3)),
      irreps_mid_("64x0e + 24x1e + 24x1o + 16x2e + 16x2o"),
      tp1_(fully_connected(irreps_sh_, irreps_sh_, irreps_mid_)),
      tp2_(fully_connected(irreps_mid_, irreps_mid_, irreps_out)) {}

Vector Polynomial::forward(const Eigen::Ref<const Eigen::MatrixX3d>& positions, double max_radius,
                           double num_neigh, double num_nodes, const Vector& weights,
                           const std::function<Vector3(const Vector3&)>& edge_transform) const {
  const int n = static_cast<int>(positions.rows());
  if (n == 0) throw DomainError("empty point cloud");
  if (weights.size() != weight_numel()) {
    throw std::invalid_argument("expected " + std::to_string(weight_numel()) + " weights");
  }
  const std::span<const double> w1(weights.data(), static_cast<std::size_t>(tp1_.weight_numel()));
  const std::span<const double> w2(weights.data() + tp1_.weight_numel(),
                                   static_cast<std::size_t>(tp2_.weight_numel()));
  const EdgeList edges = radius_graph(positions, max_radius);
  const auto num_edges = static_cast<Eigen::Index>(edges.size());

  Eigen::MatrixX3d vectors(num_edges, 3);
  for (Eigen::Index e = 0; e < num_edges; ++e) {
    Vector3 v = (positions.row(edges.src[e]) - positions.row(edges.dst[e])).transpose();
    if (edge_transform) v = edge_transform(v);
    vectors.row(e) = v.transpose();
  }
  // polynomials of the edge vectors, not functions on the sphere
  Matrix e_x = spherical_harmonics(3, vectors, false, SHNormalization::component).values;
  const double neigh = 1.0 / std::sqrt(num_neigh);

  Matrix n_x = scatter_sum(e_x, edges.dst, n) * neigh;
  Matrix mid(num_edges, irreps_mid_.dim());
  for (Eigen::Index e = 0; e < num_edges; ++e) {
    mid.row(e) = tp1_.evaluate(w1, n_x.row(edges.src[e]).transpose(), e_x.row(e).transpose()).transpose();
  }
  n_x = scatter_sum(mid, edges.dst, n) * neigh;
  Vector out = Vector::Zero(irreps_out().dim());
  for (Eigen::Index e = 0; e < num_edges; ++e) {
    out += tp2_.evaluate(w2, n_x.row(edges.src[e]).transpose(), mid.row(e).transpose());
  }
  return out * neigh / std::sqrt(num_nodes);
}

double gaussian_second_moment(const ScalarFn& phi, int nodes) {
  if (nodes < 1) throw std::invalid_argument("need at least one quadrature node");
  // Golub-Welsch for the probabilists' Hermite weight exp(-x^2/2)/sqrt(2 pi)
  Matrix jacobi = Matrix::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(double(k));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(jacobi);
  double total = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double w = eig.eigenvectors()(0, i) * eig.eigenvectors()(0, i);
    const double v = phi(eig.eigenvalues()[i]);
    total += w * v * v;
  }
  return total;
}

ScalarFn rescale_activation(ScalarFn phi, int nodes) {
  const double moment = gaussian_second_moment(phi, nodes);
  if (!(moment > 0.0)) throw DomainError("cannot rescale an activation that vanishes");
  const double c = 1.0 / std::sqrt(moment);
  return [phi = std::move(phi), c](double x) { return c * phi(x); };
}

double component_norm_statistic(const Eigen::Ref<const Matrix>& samples, const Irreps& irreps) {
  if (samples.cols() != irreps.dim()) throw std::invalid_argument("sample width must equal dim(irreps)");
  if (samples.rows() == 0) throw std::invalid_argument("no samples");
  return samples.rowwise().squaredNorm().mean() / irreps.dim();
}

}  // namespace equitensor
