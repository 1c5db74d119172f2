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

#include "equitensor/clebsch_gordan.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <tuple>

#include "equitensor/cache.hpp"
#include "equitensor/linalg.hpp"
#include "equitensor/o3.hpp"

namespace equitensor {

namespace {

using Complex = std::complex<double>;
using Key = std::tuple<int, int, int>;

constexpr double kNullThreshold = 1e-9;
constexpr double kSignThreshold = 1e-8;

struct InvariantSolve {
  int dimension = 0;
  // Null vector in the complex basis, restricted to the m1+m2+m3 = 0 entries.
  std::vector<std::array<int, 3>> support;
  Eigen::VectorXcd vector;
};

// Invariance under the y generator, which is diagonal (i m) in the complex basis,
// confines the solution to entries with m1 + m2 + m3 = 0. On that subspace we
// solve the x and z conditions through the Hermitian Gram matrix M^H M.
InvariantSolve solve_invariant(int l1, int l2, int l3) {
  const std::array<int, 3> ls{l1, l2, l3};
  const std::array<int, 3> ns{2 * l1 + 1, 2 * l2 + 1, 2 * l3 + 1};
  const int total = ns[0] * ns[1] * ns[2];
  std::array<std::array<CMatrix, 3>, 3> gens;  // [tensor slot][axis]
  for (int s = 0; s < 3; ++s) gens[s] = complex_generators(ls[s]);

  InvariantSolve out;
  for (int a = 0; a < ns[0]; ++a) {
    for (int b = 0; b < ns[1]; ++b) {
      for (int c = 0; c < ns[2]; ++c) {
        if ((a - l1) + (b - l2) + (c - l3) == 0) out.support.push_back({a, b, c});
      }
    }
  }
  const int k = static_cast<int>(out.support.size());
  CMatrix m = CMatrix::Zero(2 * total, k);
  const std::array<int, 2> axes{0, 2};
  for (int col = 0; col < k; ++col) {
    const auto idx = out.support[col];
    for (int r = 0; r < 2; ++r) {
      const int row0 = r * total;
      for (int slot = 0; slot < 3; ++slot) {
        const CMatrix& g = gens[slot][axes[r]];
        for (int t = 0; t < ns[slot]; ++t) {
          const Complex v = g(t, idx[slot]);
          if (v == Complex(0.0)) continue;
          auto moved = idx;
          moved[slot] = t;
          m(row0 + (moved[0] * ns[1] + moved[1]) * ns[2] + moved[2], col) += v;
        }
      }
    }
  }
  const CMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
  int count = 0;
  while (count < k && eig.eigenvalues()[count] < kNullThreshold) ++count;
  out.dimension = count;
  if (count > 0) out.vector = eig.eigenvectors().col(0);
  return out;
}

// Nonzero columns of each row of the change of basis.
std::vector<std::vector<std::pair<int, Complex>>> row_support(const CMatrix& q) {
  std::vector<std::vector<std::pair<int, Complex>>> rows(q.rows());
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      if (std::abs(q(r, c)) > 1e-15) rows[r].push_back({static_cast<int>(c), q(r, c)});
    }
  }
  return rows;
}

CGTensor compute_cg(int l1, int l2, int l3) {
  const InvariantSolve solve = solve_invariant(l1, l2, l3);
  if (solve.dimension != 1) {
    throw std::logic_error("invariant space of (" + std::to_string(l1) + "," + std::to_string(l2) +
                           "," + std::to_string(l3) + ") has dimension " +
                           std::to_string(solve.dimension) + ", expected 1");
  }
  const int n1 = 2 * l1 + 1, n2 = 2 * l2 + 1, n3 = 2 * l3 + 1;
  const auto q1 = row_support(complex_to_real(l1));
  const auto q2 = row_support(complex_to_real(l2));
  const auto q3 = row_support(complex_to_real(l3));

  // real coefficients: C = (Q1 (x) Q2 (x) Q3)^H c
  std::vector<Complex> c(static_cast<std::size_t>(n1) * n2 * n3, Complex(0.0));
  for (std::size_t s = 0; s < solve.support.size(); ++s) {
    const auto [a, b, cc] = solve.support[s];
    const Complex v = solve.vector[static_cast<Eigen::Index>(s)];
    for (const auto& [i, qa] : q1[a]) {
      for (const auto& [j, qb] : q2[b]) {
        for (const auto& [k, qc] : q3[cc]) {
          c[(i * n2 + j) * n3 + k] += std::conj(qa) * std::conj(qb) * std::conj(qc) * v;
        }
      }
    }
  }

  // The null vector is defined up to a complex phase; rotate it onto the reals.
  std::size_t pivot = 0;
  for (std::size_t t = 1; t < c.size(); ++t) {
    if (std::abs(c[t]) > std::abs(c[pivot])) pivot = t;
  }
  const Complex phase = std::conj(c[pivot]) / std::abs(c[pivot]);
  CGTensor out{l1, l2, l3, std::vector<double>(c.size())};
  double norm2 = 0.0;
  double imag_max = 0.0;
  for (std::size_t t = 0; t < c.size(); ++t) {
    const Complex v = c[t] * phase;
    out.values[t] = v.real();
    imag_max = std::max(imag_max, std::abs(v.imag()));
    norm2 += v.real() * v.real();
  }
  if (imag_max > 1e-10 * std::sqrt(norm2)) {
    throw std::logic_error("Clebsch-Gordan block is not real after the change of basis");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  double sign = 0.0;
  for (double& v : out.values) {
    v *= inv;
    if (sign == 0.0 && std::abs(v) > kSignThreshold) sign = v > 0 ? 1.0 : -1.0;
  }
  for (double& v : out.values) {
    v *= sign;
    if (std::abs(v) < 1e-13) v = 0.0;
  }
  return out;
}

}  // namespace

bool triangle_ok(int l1, int l2, int l3) noexcept {
  return l1 >= 0 && l2 >= 0 && l3 >= 0 && std::abs(l1 - l2) <= l3 && l3 <= l1 + l2;
}

const CGTensor& wigner_3j(int l1, int l2, int l3) {
  if (!triangle_ok(l1, l2, l3)) {
    throw DomainError("(" + std::to_string(l1) + "," + std::to_string(l2) + "," +
                      std::to_string(l3) + ") violates |l1-l2| <= l3 <= l1+l2");
  }
  static ConcurrentCache<Key, CGTensor> cache;
  return cache.get_or_compute(Key{l1, l2, l3}, [&] { return compute_cg(l1, l2, l3); });
}

std::vector<CGEntry> cg_entries(int l1, int l2, int l3, double scale) {
  const CGTensor& cg = wigner_3j(l1, l2, l3);
  std::vector<CGEntry> out;
  for (int i = 0; i < cg.n1(); ++i) {
    for (int j = 0; j < cg.n2(); ++j) {
      for (int k = 0; k < cg.n3(); ++k) {
        const double v = cg(i, j, k);
        if (v != 0.0) out.push_back({i, j, k, scale * v});
      }
    }
  }
  return out;
}

int invariant_space_dimension(int l1, int l2, int l3) {
  if (l1 < 0 || l2 < 0 || l3 < 0) throw std::invalid_argument("negative rotation order");
  return solve_invariant(l1, l2, l3).dimension;
}

}  // namespace equitensor
