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

#include "equitensor/reduced_tensor_product.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include "equitensor/clebsch_gordan.hpp"

namespace equitensor {

namespace {

constexpr double kRankTolerance = 1e-9;

std::vector<int> identity_perm(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

struct Word {
  std::string letters;
  int sign = 1;
  std::size_t position = 0;
};

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  while (true) {
    skip();
    Word w;
    w.position = pos;
    if (pos < text.size() && text[pos] == '-') {
      if (words.empty()) throw ParseError("the first word cannot carry a sign", pos);
      w.sign = -1;
      ++pos;
      skip();
    }
    const std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) {
      throw ParseError(pos < text.size() ? std::string("expected index letters, found '") +
                                               text[pos] + "'"
                                         : std::string("expected index letters"),
                       pos);
    }
    w.letters = std::string(text.substr(start, pos - start));
    words.push_back(std::move(w));
    skip();
    if (pos == text.size()) break;
    if (text[pos] != '=') throw ParseError(std::string("expected '=', found '") + text[pos] + "'", pos);
    ++pos;
  }
  return words;
}

int flat_size(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
}

}  // namespace

SignedPermutation SignedPermutation::operator*(const SignedPermutation& other) const {
  SignedPermutation out{std::vector<int>(perm.size()), sign * other.sign};
  for (std::size_t k = 0; k < perm.size(); ++k) {
    out.perm[k] = perm[static_cast<std::size_t>(other.perm[k])];
  }
  return out;
}

IndexFormula IndexFormula::parse(std::string_view text) {
  const std::vector<Word> words = split_words(text);
  IndexFormula f;
  f.letters_ = words.front().letters;
  const int n = f.num_indices();
  if (std::set<char>(f.letters_.begin(), f.letters_.end()).size() != f.letters_.size()) {
    throw ParseError("index letters must be distinct", words.front().position);
  }
  std::vector<SignedPermutation> generators;
  for (std::size_t w = 1; w < words.size(); ++w) {
    const Word& word = words[w];
    std::string a = word.letters, b = f.letters_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      throw ParseError("'" + word.letters + "' is not a permutation of '" + f.letters_ + "'",
                       word.position);
    }
    SignedPermutation g{std::vector<int>(static_cast<std::size_t>(n)), word.sign};
    for (int k = 0; k < n; ++k) {
      g.perm[static_cast<std::size_t>(k)] =
          static_cast<int>(f.letters_.find(word.letters[static_cast<std::size_t>(k)]));
    }
    generators.push_back(std::move(g));
  }

  // closure
  std::map<std::vector<int>, int> seen{{identity_perm(n), 1}};
  std::vector<SignedPermutation> group{{identity_perm(n), 1}};
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (const auto& g : generators) {
      for (const SignedPermutation& next : {group[head] * g, g * group[head]}) {
        auto [it, inserted] = seen.try_emplace(next.perm, next.sign);
        if (inserted) {
          group.push_back(next);
        } else if (it->second != next.sign) {
          throw DomainError("formula forces zero tensor");
        }
      }
    }
  }
  f.group_ = std::move(group);
  return f;
}

std::vector<std::vector<int>> IndexFormula::orbits() const {
  const int n = num_indices();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int k = 0; k < n; ++k) {
    if (label[k] >= 0) continue;
    std::vector<int> orbit;
    for (const auto& g : group_) {
      const int image = g.perm[static_cast<std::size_t>(k)];
      if (label[image] < 0) {
        label[image] = static_cast<int>(out.size());
        orbit.push_back(image);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

Matrix permutation_matrix(const SignedPermutation& tau, const std::vector<int>& index_dims) {
  const int n = static_cast<int>(index_dims.size());
  if (static_cast<int>(tau.perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
  for (int k = 0; k < n; ++k) {
    if (index_dims[k] != index_dims[tau.perm[k]]) {
      throw std::invalid_argument("permuted indices must have equal dimensions");
    }
  }
  const int total = flat_size(index_dims);
  Matrix m = Matrix::Zero(total, total);
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  for (int flat = 0; flat < total; ++flat) {
    int target = 0;
    for (int k = 0; k < n; ++k) target = target * index_dims[k] + x[tau.perm[k]];
    m(flat, target) = 1.0;
    for (int k = n - 1; k >= 0; --k) {
      if (++x[k] < index_dims[k]) break;
      x[k] = 0;
    }
  }
  return m;
}

Matrix permutation_basis(const IndexFormula& formula, const std::vector<int>& index_dims) {
  if (static_cast<int>(index_dims.size()) != formula.num_indices()) {
    throw std::invalid_argument("need one dimension per index");
  }
  const int total = flat_size(index_dims);
  Matrix sym = Matrix::Zero(total, total);
  for (const auto& tau : formula.group()) {
    sym += double(tau.sign) * permutation_matrix(tau, index_dims);
  }
  sym /= double(formula.group().size());
  return gram_schmidt_rows(sym, kRankTolerance);
}

std::vector<IrrepBasis> chained_decomposition(const std::vector<Irreps>& index_irreps) {
  if (index_irreps.empty()) throw std::invalid_argument("need at least one index");
  struct Copy {
    Irrep ir;
    Matrix rows;
  };
  std::vector<Copy> copies;
  int total = index_irreps.front().dim();
  {
    const Irreps& first = index_irreps.front();
    const auto offsets = first.offsets();
    for (std::size_t e = 0; e < first.size(); ++e) {
      const int n = first[e].ir.dim();
      for (int u = 0; u < first[e].mul; ++u) {
        Matrix rows = Matrix::Zero(n, total);
        for (int k = 0; k < n; ++k) rows(k, offsets[e] + u * n + k) = 1.0;
        copies.push_back({first[e].ir, std::move(rows)});
      }
    }
  }
  for (std::size_t idx = 1; idx < index_irreps.size(); ++idx) {
    const Irreps& next = index_irreps[idx];
    const int d = next.dim();
    const auto offsets = next.offsets();
    std::vector<Copy> grown;
    for (const Copy& copy : copies) {
      for (std::size_t e = 0; e < next.size(); ++e) {
        const Irrep& ir_b = next[e].ir;
        for (int v = 0; v < next[e].mul; ++v) {
          const int column0 = offsets[e] + v * ir_b.dim();
          for (const Irrep& ir_c : selection_rule(copy.ir, ir_b)) {
            const auto entries =
                cg_entries(copy.ir.l, ir_b.l, ir_c.l, std::sqrt(2.0 * ir_c.l + 1.0));
            Matrix rows = Matrix::Zero(ir_c.dim(), total * d);
            for (const auto& c : entries) {
              for (int x = 0; x < total; ++x) {
                const double r = copy.rows(c.i, x);
                if (r != 0.0) rows(c.k, x * d + column0 + c.j) += c.value * r;
              }
            }
            grown.push_back({ir_c, std::move(rows)});
          }
        }
      }
    }
    copies = std::move(grown);
    total *= d;
  }

  std::vector<Irrep> order;
  for (const auto& c : copies) {
    if (std::find(order.begin(), order.end(), c.ir) == order.end()) order.push_back(c.ir);
  }
  std::sort(order.begin(), order.end());
  std::vector<IrrepBasis> out;
  for (const Irrep& ir : order) {
    IrrepBasis basis{ir, 0, Matrix()};
    std::vector<const Matrix*> parts;
    for (const auto& c : copies) {
      if (c.ir == ir) parts.push_back(&c.rows);
    }
    basis.mul = static_cast<int>(parts.size());
    basis.rows.resize(basis.mul * ir.dim(), total);
    for (int u = 0; u < basis.mul; ++u) basis.rows.middleRows(u * ir.dim(), ir.dim()) = *parts[u];
    out.push_back(std::move(basis));
  }
  return out;
}

ReducedBasis reduce(const IndexFormula& formula, const std::map<char, Irreps>& assignment,
                    int component) {
  const std::string& letters = formula.letters();
  for (const auto& [letter, irreps] : assignment) {
    if (letters.find(letter) == std::string::npos) {
      throw std::invalid_argument(std::string("index '") + letter + "' does not appear in the formula");
    }
  }
  ReducedBasis out;
  out.index_irreps.resize(letters.size());
  for (const auto& orbit : formula.orbits()) {
    const Irreps* chosen = nullptr;
    char chosen_letter = 0;
    for (int k : orbit) {
      auto it = assignment.find(letters[k]);
      if (it == assignment.end()) continue;
      if (chosen && !(it->second == *chosen)) {
        throw std::invalid_argument(std::string("indices '") + chosen_letter + "' and '" +
                                    letters[k] +
                                    "' are related by a permutation but carry different irreps");
      }
      chosen = &it->second;
      chosen_letter = letters[k];
    }
    if (!chosen) {
      throw std::invalid_argument(std::string("no irreps given for index '") + letters[orbit[0]] + "'");
    }
    for (int k : orbit) out.index_irreps[k] = *chosen;
  }
  for (const auto& irreps : out.index_irreps) out.index_dims.push_back(irreps.dim());

  out.P = permutation_basis(formula, out.index_dims);
  const Matrix& p = out.P;
  const auto bases = chained_decomposition(out.index_irreps);

  std::vector<MulIrrep> irreps_out;
  std::vector<Matrix> blocks;
  for (const IrrepBasis& basis : bases) {
    const int n = basis.ir.dim();
    const int comp = component % n;
    Matrix r(basis.mul, basis.rows.cols());
    for (int u = 0; u < basis.mul; ++u) r.row(u) = basis.rows.row(u * n + comp);

    // null space of |r^T a - P^T b|^2
    const int m = basis.mul;
    const int np = static_cast<int>(p.rows());
    Matrix u_mat(m + np, m + np);
    u_mat.topLeftCorner(m, m) = r * r.transpose();
    u_mat.topRightCorner(m, np) = -r * p.transpose();
    u_mat.bottomLeftCorner(np, m) = -p * r.transpose();
    u_mat.bottomRightCorner(np, np) = p * p.transpose();
    const Matrix null = null_space_of_gram(u_mat, kRankTolerance);
    if (null.cols() == 0) continue;
    const Matrix w_raw = null.topRows(m).transpose();  // solutions x multiplicity
    const Matrix w = gram_schmidt_rows(w_raw.transpose() * w_raw, kRankTolerance);
    if (w.rows() == 0) continue;

    Matrix q(w.rows() * n, basis.rows.cols());
    for (Eigen::Index s = 0; s < w.rows(); ++s) {
      for (int k = 0; k < n; ++k) {
        Vector row = Vector::Zero(basis.rows.cols());
        for (int uu = 0; uu < m; ++uu) row += w(s, uu) * basis.rows.row(uu * n + k).transpose();
        q.row(s * n + k) = row.transpose();
      }
    }
    irreps_out.push_back(MulIrrep{static_cast<int>(w.rows()), basis.ir});
    blocks.push_back(std::move(q));
  }
  out.irreps_out = Irreps(std::move(irreps_out));
  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  out.Q.resize(rows, p.cols());
  rows = 0;
  for (const auto& b : blocks) {
    out.Q.middleRows(rows, b.rows()) = b;
    rows += b.rows();
  }
  return out;
}

ReducedBasis reduce(std::string_view formula, const std::map<char, Irreps>& assignment) {
  return reduce(IndexFormula::parse(formula), assignment);
}

}  // namespace equitensor
