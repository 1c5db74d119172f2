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

#include "equitensor/irreps.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>

namespace equitensor {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  bool done() const { return pos_ >= text_.size(); }
  std::size_t pos() const { return pos_; }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  void advance() { ++pos_; }

  int read_uint() {
    skip_space();
    const std::size_t start = pos_;
    long value = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > 1'000'000) throw ParseError("integer too large", start);
      advance();
    }
    if (pos_ == start) {
      throw ParseError(done() ? std::string("unexpected end of input, expected an integer")
                              : std::string("expected an integer, found '") + peek() + "'",
                       start);
    }
    return static_cast<int>(value);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

int read_parity(Scanner& s) {
  s.skip_space();
  const std::size_t at = s.pos();
  if (s.done()) throw ParseError("unexpected end of input, expected parity 'e' or 'o'", at);
  const char c = s.peek();
  if (c == 'e') {
    s.advance();
    return 1;
  }
  if (c == 'o') {
    s.advance();
    return -1;
  }
  throw ParseError(std::string("unknown parity '") + c + "', expected 'e' or 'o'", at);
}

// term := [uint 'x'] uint ('e'|'o')
MulIrrep read_term(Scanner& s) {
  int first = s.read_uint();
  s.skip_space();
  int mul = 1;
  int l = first;
  if (s.peek() == 'x') {
    s.advance();
    mul = first;
    l = s.read_uint();
  }
  const int p = read_parity(s);
  return MulIrrep{mul, Irrep{l, p}};
}

}  // namespace

Irrep::Irrep(int l_, int p_) : l(l_), p(p_) {
  if (l < 0) throw std::invalid_argument("irrep order l must be non-negative");
  if (p != 1 && p != -1) throw std::invalid_argument("irrep parity must be +1 or -1");
}

Irrep Irrep::parse(std::string_view text) {
  Scanner s(text);
  const int l = s.read_uint();
  const int p = read_parity(s);
  s.skip_space();
  if (!s.done()) throw ParseError("trailing characters after irrep", s.pos());
  return Irrep{l, p};
}

std::string Irrep::str() const { return std::to_string(l) + (p == 1 ? "e" : "o"); }

std::string MulIrrep::str() const { return std::to_string(mul) + "x" + ir.str(); }

Irreps Irreps::parse(std::string_view text) {
  Scanner s(text);
  s.skip_space();
  if (s.done()) throw ParseError("empty irreps string", 0);
  std::vector<MulIrrep> items;
  while (true) {
    items.push_back(read_term(s));
    s.skip_space();
    if (s.done()) break;
    if (s.peek() != '+') {
      throw ParseError(std::string("expected '+' between terms, found '") + s.peek() + "'", s.pos());
    }
    s.advance();
  }
  return Irreps(std::move(items));
}

Irreps Irreps::spherical_harmonics(int lmax) {
  if (lmax < 0) throw std::invalid_argument("lmax must be non-negative");
  std::vector<MulIrrep> items;
  for (int l = 0; l <= lmax; ++l) items.push_back({1, Irrep{l, l % 2 == 0 ? 1 : -1}});
  return Irreps(std::move(items));
}

int Irreps::dim() const noexcept {
  return std::accumulate(items_.begin(), items_.end(), 0,
                         [](int acc, const MulIrrep& m) { return acc + m.dim(); });
}

int Irreps::num_irreps() const noexcept {
  return std::accumulate(items_.begin(), items_.end(), 0,
                         [](int acc, const MulIrrep& m) { return acc + m.mul; });
}

int Irreps::lmax() const {
  if (items_.empty()) throw std::logic_error("lmax of empty irreps");
  int l = 0;
  for (const auto& m : items_) l = std::max(l, m.ir.l);
  return l;
}

std::vector<int> Irreps::offsets() const {
  std::vector<int> out(items_.size() + 1, 0);
  for (std::size_t i = 0; i < items_.size(); ++i) out[i + 1] = out[i] + items_[i].dim();
  return out;
}

Irreps Irreps::operator+(const Irreps& other) const {
  std::vector<MulIrrep> items = items_;
  items.insert(items.end(), other.items_.begin(), other.items_.end());
  return Irreps(std::move(items));
}

Irreps Irreps::simplified() const {
  std::vector<MulIrrep> sorted;
  for (const auto& m : items_) {
    if (m.mul > 0) sorted.push_back(m);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const MulIrrep& a, const MulIrrep& b) { return a.ir < b.ir; });
  std::vector<MulIrrep> merged;
  for (const auto& m : sorted) {
    if (!merged.empty() && merged.back().ir == m.ir) {
      merged.back().mul += m.mul;
    } else {
      merged.push_back(m);
    }
  }
  return Irreps(std::move(merged));
}

std::string Irreps::str() const {
  std::string out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += '+';
    out += items_[i].str();
  }
  return out;
}

std::vector<Irrep> selection_rule(const Irrep& a, const Irrep& b) {
  std::vector<Irrep> out;
  for (int l = std::abs(a.l - b.l); l <= a.l + b.l; ++l) out.push_back(Irrep{l, a.p * b.p});
  return out;
}

bool path_allowed(const Irrep& a, const Irrep& b, const Irrep& out) noexcept {
  return std::abs(a.l - b.l) <= out.l && out.l <= a.l + b.l && out.p == a.p * b.p;
}

}  // namespace equitensor
