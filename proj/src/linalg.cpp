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

#include "equitensor/linalg.hpp"

namespace equitensor {

Matrix gram_schmidt_rows(const Matrix& rows, double tol) {
  Matrix basis(rows.rows(), rows.cols());
  Eigen::Index count = 0;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    Vector v = rows.row(r).transpose();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index b = 0; b < count; ++b) {
        v -= basis.row(b).dot(v) * basis.row(b).transpose();
      }
    }
    const double norm = v.norm();
    if (norm < tol) continue;
    basis.row(count++) = (v / norm).transpose();
  }
  return basis.topRows(count);
}

Matrix null_space_of_gram(const Matrix& gram, double threshold) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  const Vector& values = eig.eigenvalues();
  Eigen::Index count = 0;
  while (count < values.size() && values[count] < threshold) ++count;
  // eigenvalues come sorted ascending
  return eig.eigenvectors().leftCols(count);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

int numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > rel_tol * s[0]) ++rank;
  }
  return rank;
}

}  // namespace equitensor
