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

#include "equitensor/errors.hpp"

namespace equitensor {

/// Real-basis Clebsch-Gordan (Wigner 3j) block for (l1, l2, l3), stored dense
/// in row-major (i, j, k) order. Frobenius norm 1; the first entry (in
/// lexicographic order) whose magnitude exceeds 1e-8 is positive.
struct CGTensor {
  int l1 = 0;
  int l2 = 0;
  int l3 = 0;
  std::vector<double> values;

  int n1() const noexcept { return 2 * l1 + 1; }
  int n2() const noexcept { return 2 * l2 + 1; }
  int n3() const noexcept { return 2 * l3 + 1; }
  double operator()(int i, int j, int k) const { return values[(i * n2() + j) * n3() + k]; }
};

/// One nonzero CG entry, used by the contraction loops.
struct CGEntry {
  int i;
  int j;
  int k;
  double value;
};

bool triangle_ok(int l1, int l2, int l3) noexcept;

/// The unique rotation-invariant tensor of l1 x l2 x l3. Cached and thread-safe.
/// Throws DomainError when the triangle rule fails.
const CGTensor& wigner_3j(int l1, int l2, int l3);

/// Nonzero entries of wigner_3j(l1, l2, l3) scaled by `scale`.
std::vector<CGEntry> cg_entries(int l1, int l2, int l3, double scale = 1.0);

/// Dimension of the solution space of the infinitesimal invariance system
/// for (l1, l2, l3): 1 for admissible triples and 0 otherwise.
int invariant_space_dimension(int l1, int l2, int l3);

}  // namespace equitensor
