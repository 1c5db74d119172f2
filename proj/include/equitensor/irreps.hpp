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

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "equitensor/errors.hpp"

namespace equitensor {

/// Irreducible representation of O(3): rotation order `l` and parity `p` (+1 even, -1 odd).
struct Irrep {
  int l = 0;
  int p = 1;

  Irrep() = default;
  Irrep(int l_, int p_);

  /// Parses a single irrep such as "2e" or "1o".
  static Irrep parse(std::string_view text);

  int dim() const noexcept { return 2 * l + 1; }
  bool is_scalar() const noexcept { return l == 0 && p == 1; }
  std::string str() const;

  Irrep operator*(const Irrep& other) const noexcept { return Irrep{l, p * other.p}; }

  friend bool operator==(const Irrep&, const Irrep&) = default;
  /// Orders by l, then even before odd.
  friend bool operator<(const Irrep& a, const Irrep& b) noexcept {
    return a.l != b.l ? a.l < b.l : a.p > b.p;
  }
};

struct MulIrrep {
  int mul = 1;
  Irrep ir;

  int dim() const noexcept { return mul * ir.dim(); }
  std::string str() const;

  friend bool operator==(const MulIrrep&, const MulIrrep&) = default;
};

/// Ordered direct sum of irreps with multiplicities.
///
/// Order and duplicates are kept exactly as given: the list defines the data
/// layout of a feature vector, entry by entry, each entry laid out as
/// `mul` consecutive copies of a `2l+1` block.
class Irreps {
 public:
  Irreps() = default;
  Irreps(std::initializer_list<MulIrrep> items) : items_(items) {}
  explicit Irreps(std::vector<MulIrrep> items) : items_(std::move(items)) {}
  explicit Irreps(const char* text) : Irreps(parse(text)) {}
  explicit Irreps(const std::string& text) : Irreps(parse(text)) {}

  /// Grammar: `term ('+' term)*`, `term := [uint 'x'] uint ('e'|'o')`.
  static Irreps parse(std::string_view text);

  /// `1x0e+1x1o+1x2e+...` up to `lmax`, parity (-1)^l.
  static Irreps spherical_harmonics(int lmax);

  int dim() const noexcept;
  /// Total multiplicity (number of irrep copies).
  int num_irreps() const noexcept;
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  int lmax() const;

  const MulIrrep& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  const std::vector<MulIrrep>& items() const noexcept { return items_; }

  /// Starting offset of each entry in the flat layout; has size()+1 elements.
  std::vector<int> offsets() const;

  /// Concatenation (direct sum).
  Irreps operator+(const Irreps& other) const;

  /// Sorted by (l, p) and adjacent equal irreps merged; zero multiplicities dropped.
  Irreps simplified() const;

  /// Canonical text form, e.g. "2x0e+2x2e+1x4e"; empty irreps format as "".
  std::string str() const;

  friend bool operator==(const Irreps&, const Irreps&) = default;

 private:
  std::vector<MulIrrep> items_;
};

/// Output irreps allowed for the product of `a` and `b`: |l1-l2| <= l3 <= l1+l2,
/// p3 = p1*p2, ascending in l3.
std::vector<Irrep> selection_rule(const Irrep& a, const Irrep& b);

/// True if `out` is in selection_rule(a, b).
bool path_allowed(const Irrep& a, const Irrep& b, const Irrep& out) noexcept;

}  // namespace equitensor
