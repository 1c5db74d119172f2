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

#include "equitensor/o3.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "equitensor/cache.hpp"

namespace equitensor {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

// Spectral data for exponentiating one real antisymmetric generator J:
// i J is Hermitian, i J = V diag(lambda) V^H, hence exp(t J) = V diag(e^{-i lambda t}) V^H.
struct ExpData {
  CMatrix vectors;
  Vector lambda;
};

ConcurrentCache<int, Generators>& generator_cache() {
  static ConcurrentCache<int, Generators> cache;
  return cache;
}

ConcurrentCache<std::pair<int, int>, ExpData>& exp_cache() {
  static ConcurrentCache<std::pair<int, int>, ExpData> cache;
  return cache;
}

const ExpData& exp_data(int l, int axis) {
  return exp_cache().get_or_compute({l, axis}, [&] {
    const Matrix& j = generators(l)[axis];
    const CMatrix hermitian = kI * j.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian);
    return ExpData{eig.eigenvectors(), eig.eigenvalues()};
  });
}

void check_order(int l) {
  if (l < 0) throw std::invalid_argument("rotation order l must be non-negative");
}

}  // namespace

Matrix3 rot_x(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Matrix3 r;
  r << 1, 0, 0, 0, c, -s, 0, s, c;
  return r;
}

Matrix3 rot_y(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Matrix3 r;
  r << c, 0, s, 0, 1, 0, -s, 0, c;
  return r;
}

Matrix3 rot_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Matrix3 r;
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

Matrix3 rot_matrix(const EulerAngles& angles) {
  return rot_y(angles.alpha) * rot_x(angles.beta) * rot_y(angles.gamma);
}

EulerAngles matrix_to_angles(const Matrix3& rotation) {
  // R e_y = (sin b sin a, cos b, sin b cos a)
  const Vector3 axis = rotation.col(1);
  const double beta = std::acos(std::clamp(axis.y(), -1.0, 1.0));
  double alpha = std::atan2(axis.x(), axis.z());
  if (std::hypot(axis.x(), axis.z()) < 1e-14) alpha = 0.0;
  // what is left is a pure rotation about y
  const Matrix3 rest = (rot_y(alpha) * rot_x(beta)).transpose() * rotation;
  const double gamma = std::atan2(rest(0, 2), rest(0, 0));
  return EulerAngles{alpha, beta, gamma};
}

EulerAngles compose(const EulerAngles& a, const EulerAngles& b) {
  return matrix_to_angles(rot_matrix(a) * rot_matrix(b));
}

Matrix3 O3Element::matrix() const {
  const Matrix3 r = rot_matrix(rotation);
  return inversion ? Matrix3(-r) : r;
}

O3Element O3Element::inverse() const {
  return O3Element{matrix_to_angles(rot_matrix(rotation).transpose()), inversion};
}

O3Element O3Element::operator*(const O3Element& other) const {
  return O3Element{compose(rotation, other.rotation), inversion != other.inversion};
}

EulerAngles rand_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> cosine(-1.0, 1.0);
  const double alpha = angle(rng);
  const double beta = std::acos(cosine(rng));
  const double gamma = angle(rng);
  return EulerAngles{alpha, beta, gamma};
}

O3Element rand_o3(std::mt19937_64& rng) {
  const EulerAngles rotation = rand_rotation(rng);
  std::bernoulli_distribution coin(0.5);
  return O3Element{rotation, coin(rng)};
}

Vector3 to_irrep_basis(const Vector3& cartesian) {
  Vector3 out;
  for (int axis = 0; axis < 3; ++axis) out[kVectorComponentOrder[axis]] = cartesian[axis];
  return out;
}

CMatrix complex_to_real(int l) {
  check_order(l);
  const int n = 2 * l + 1;
  const double h = 1.0 / std::sqrt(2.0);
  CMatrix q = CMatrix::Zero(n, n);
  for (int m = -l; m < 0; ++m) {
    q(l + m, l - m) = h;
    q(l + m, l + m) = -kI * h;
  }
  q(l, l) = 1.0;
  for (int m = 1; m <= l; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    q(l + m, l + m) = sign * h;
    q(l + m, l - m) = kI * sign * h;
  }
  return std::pow(-kI, l) * q;
}

std::array<CMatrix, 3> complex_generators(int l) {
  check_order(l);
  const int n = 2 * l + 1;
  const double jj = l * (l + 1.0);
  CMatrix raising = CMatrix::Zero(n, n);
  CMatrix lowering = CMatrix::Zero(n, n);
  CMatrix diag = CMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double m = -l + k;
    raising(k + 1, k) = -std::sqrt(jj - m * (m + 1.0));
    const double mp = m + 1.0;
    lowering(k, k + 1) = std::sqrt(jj - mp * (mp - 1.0));
  }
  for (int k = 0; k < n; ++k) diag(k, k) = kI * double(k - l);
  return {0.5 * (raising + lowering), diag, -0.5 * kI * (raising - lowering)};
}

const Generators& generators(int l) {
  check_order(l);
  return generator_cache().get_or_compute(l, [l] {
    const CMatrix q = complex_to_real(l);
    const auto complex = complex_generators(l);
    std::array<Matrix, 3> real;
    for (int a = 0; a < 3; ++a) real[a] = (q.adjoint() * complex[a] * q).real();
    return Generators{real[0], real[1], real[2]};
  });
}

Matrix generator_exp(int l, int axis, double angle) {
  check_order(l);
  if (l == 0) return Matrix::Ones(1, 1);
  const ExpData& data = exp_data(l, axis);
  const Eigen::VectorXcd phases =
      (data.lambda.cast<Complex>() * (-kI * angle)).array().exp().matrix();
  return (data.vectors * phases.asDiagonal() * data.vectors.adjoint()).real();
}

Matrix wigner_d(int l, const EulerAngles& angles) {
  check_order(l);
  if (l == 0) return Matrix::Ones(1, 1);
  return generator_exp(l, 1, angles.alpha) * generator_exp(l, 0, angles.beta) *
         generator_exp(l, 1, angles.gamma);
}

Matrix d_o3(const Irrep& ir, const O3Element& g) {
  Matrix d = wigner_d(ir.l, g.rotation);
  if (g.inversion && ir.p == -1) d = -d;
  return d;
}

Matrix d_irreps(const Irreps& irreps, const O3Element& g) {
  std::vector<Matrix> blocks;
  for (const auto& m : irreps) {
    const Matrix d = d_o3(m.ir, g);
    for (int u = 0; u < m.mul; ++u) blocks.push_back(d);
  }
  return direct_sum(blocks);
}

}  // namespace equitensor
