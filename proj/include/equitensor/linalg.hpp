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

#include <Eigen/Dense>
#include <vector>

namespace equitensor {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;

/// Row-wise Gram-Schmidt with a second re-orthogonalization pass. Rows whose
/// residual norm falls below `tol` are dropped, so the result has rank(rows) rows.
Matrix gram_schmidt_rows(const Matrix& rows, double tol = 1e-9);

/// Eigenvectors (as columns) of the symmetric matrix `gram` whose eigenvalues are below `threshold`.
Matrix null_space_of_gram(const Matrix& gram, double threshold = 1e-9);

Matrix kron(const Matrix& a, const Matrix& b);

Matrix direct_sum(const std::vector<Matrix>& blocks);

/// Numerical rank by singular values relative to the largest one.
int numerical_rank(const Matrix& m, double rel_tol = 1e-9);

}  // namespace equitensor
