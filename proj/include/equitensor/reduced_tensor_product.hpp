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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "equitensor/errors.hpp"
#include "equitensor/irreps.hpp"
#include "equitensor/linalg.hpp"

namespace equitensor {

/// Index permutation with the sign it carries in a formula. A tensor T obeys
/// the element when T(x_0, ..., x_{n-1}) = sign * T(x_perm[0], ..., x_perm[n-1]).
struct SignedPermutation {
  std::vector<int> perm;
  int sign = 1;

  /// (a * b)(k) = a(b(k)); signs multiply.
  SignedPermutation operator*(const SignedPermutation& other) const;
  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

/// Parsed index formula such as "ijkl=jikl=ijlk=klij" or "ij=-ji": the index
/// letters (in the order of the first word) and the closed group of signed
/// permutations the formula generates.
class IndexFormula {
 public:
  /// Grammar `word ('=' ['-'] word)*`; every word must be a permutation of the first.
  /// Throws ParseError on malformed text and DomainError("formula forces zero tensor")
  /// when the generated group assigns two signs to one permutation.
  static IndexFormula parse(std::string_view text);

  const std::string& letters() const noexcept { return letters_; }
  int num_indices() const noexcept { return static_cast<int>(letters_.size()); }
  const std::vector<SignedPermutation>& group() const noexcept { return group_; }
  /// Index positions grouped by the orbits of the permutation group.
  std::vector<std::vector<int>> orbits() const;

 private:
  std::string letters_;
  std::vector<SignedPermutation> group_;
};

/// Flat row-major index -> the permuted tensor's flat index; the matrix form
/// D_X(tau) has a single 1 per row at (x, x o tau).
Matrix permutation_matrix(const SignedPermutation& tau, const std::vector<int>& index_dims);

/// Orthonormal rows spanning {x : x = sign(tau) D_X(tau) x for all tau}; the
/// symmetrizer (1/|G|) sum sign(tau) D_X(tau) is formed and its range extracted
/// by Gram-Schmidt.
Matrix permutation_basis(const IndexFormula& formula, const std::vector<int>& index_dims);

/// Irrep component of a tensor space: `mul` copies of `ir`; row u*(2l+1)+k is
/// component k of copy u, written in the flat tensor basis.
struct IrrepBasis {
  Irrep ir;
  int mul = 0;
  Matrix rows;
};

/// Decomposes the tensor product of the index irreps, multiplying one index at a
/// time and splitting with Clebsch-Gordan blocks. Copies of the same irrep are
/// merged in order of appearance; the result is ordered by (l, p).
/// Rows over all components are orthonormal and together span the whole space.
std::vector<IrrepBasis> chained_decomposition(const std::vector<Irreps>& index_irreps);

/// Change of basis from the flat tensor space to irreps.
struct ReducedBasis {
  Irreps irreps_out;
  /// dim(irreps_out) x dim(X), orthonormal rows grouped by irreps_out entries.
  Matrix Q;
  /// Orthonormal basis of the permutation-stable subspace.
  Matrix P;
  std::vector<Irreps> index_irreps;
  std::vector<int> index_dims;
};

/// Decomposes the tensors obeying `formula` whose indices carry the given irreps.
/// `assignment` maps index letters to irreps; indices in the same permutation
/// orbit must agree, and a letter may be left out when an orbit-mate is given.
/// `component` selects which irrep component is used to solve for the mixing
/// coefficients (taken modulo 2l+1).
ReducedBasis reduce(const IndexFormula& formula, const std::map<char, Irreps>& assignment,
                    int component = 0);
ReducedBasis reduce(std::string_view formula, const std::map<char, Irreps>& assignment);

}  // namespace equitensor
