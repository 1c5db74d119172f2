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

#include <gtest/gtest.h>

#include <random>

#include "equitensor/irreps.hpp"

using namespace equitensor;

TEST(Irreps, ParsesExplicitMultiplicities) {
  const Irreps x = Irreps::parse("1x0e + 1x2e");
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x[0], (MulIrrep{1, Irrep{0, 1}}));
  EXPECT_EQ(x[1], (MulIrrep{1, Irrep{2, 1}}));
  EXPECT_EQ(x.dim(), 6);
}

TEST(Irreps, ImplicitMultiplicityIsOne) {
  const Irreps x = Irreps::parse("1o");
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(x[0], (MulIrrep{1, Irrep{1, -1}}));
}

TEST(Irreps, DimensionSumsMultiplicityTimesIrrepDim) {
  EXPECT_EQ(Irreps("64x0e + 24x1e").dim(), 136);
  EXPECT_EQ(Irreps("0e").dim(), 1);
  EXPECT_EQ(Irreps("1x0e+1x2e").dim(), 6);
  EXPECT_EQ(Irreps("1o+1o").dim(), 6);
}

TEST(Irreps, KeepsOrderAndDuplicates) {
  const Irreps x("1o + 0e + 1o");
  ASSERT_EQ(x.size(), 3u);
  EXPECT_EQ(x.str(), "1x1o+1x0e+1x1o");
  EXPECT_EQ(x.simplified().str(), "1x0e+2x1o");
}

TEST(Irreps, ZeroMultiplicityRoundTrips) {
  const Irreps x("0x1e + 2x0o");
  EXPECT_EQ(x.dim(), 2);
  EXPECT_EQ(x.str(), "0x1e+2x0o");
  EXPECT_EQ(Irreps::parse(x.str()), x);
}

TEST(Irreps, WhitespaceIsFree) {
  EXPECT_EQ(Irreps::parse("  3 x 2 o+1e  "), Irreps::parse("3x2o+1x1e"));
}

TEST(Irreps, ParseErrorsNamePosition) {
  try {
    (void)Irreps::parse("1x0e + 2q");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 8u);
    EXPECT_NE(std::string(e.what()).find("unknown parity 'q'"), std::string::npos);
  }
  EXPECT_THROW((void)Irreps::parse(""), ParseError);
  EXPECT_THROW((void)Irreps::parse("   "), ParseError);
  EXPECT_THROW((void)Irreps::parse("1x"), ParseError);
  EXPECT_THROW((void)Irreps::parse("1e +"), ParseError);
  EXPECT_THROW((void)Irreps::parse("1e 2e"), ParseError);
  EXPECT_THROW((void)Irreps::parse("xe"), ParseError);
}

TEST(Irreps, FormatParseRoundTripOnRandomLists) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> mul(0, 12), l(0, 9), parity(0, 1), count(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<MulIrrep> items;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) items.push_back({mul(rng), Irrep{l(rng), parity(rng) ? 1 : -1}});
    const Irreps x(items);
    EXPECT_EQ(Irreps::parse(x.str()), x);
    // the canonical text is a fixed point
    EXPECT_EQ(Irreps::parse(x.str()).str(), x.str());
  }
}

TEST(SelectionRule, VectorTimesVector) {
  const auto out = selection_rule(Irrep::parse("1o"), Irrep::parse("1o"));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].str(), "0e");
  EXPECT_EQ(out[1].str(), "1e");
  EXPECT_EQ(out[2].str(), "2e");
}

TEST(SelectionRule, ScalarPreservesType) {
  const auto out = selection_rule(Irrep::parse("0e"), Irrep::parse("1o"));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].str(), "1o");
}

TEST(SelectionRule, EnumeratesTriangle) {
  const auto out = selection_rule(Irrep::parse("2e"), Irrep::parse("1o"));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].str(), "1o");
  EXPECT_EQ(out[1].str(), "2o");
  EXPECT_EQ(out[2].str(), "3o");
}

TEST(SelectionRule, SymmetricAndCounted) {
  for (int l1 = 0; l1 <= 6; ++l1) {
    for (int l2 = 0; l2 <= 6; ++l2) {
      for (int p1 : {1, -1}) {
        for (int p2 : {1, -1}) {
          const Irrep a{l1, p1}, b{l2, p2};
          const auto ab = selection_rule(a, b);
          EXPECT_EQ(ab, selection_rule(b, a));
          EXPECT_EQ(static_cast<int>(ab.size()), 2 * std::min(l1, l2) + 1);
          for (const auto& c : ab) EXPECT_TRUE(path_allowed(a, b, c));
        }
      }
    }
  }
}

TEST(ShIrreps, ParityAlternates) {
  EXPECT_EQ(Irreps::spherical_harmonics(0).str(), "1x0e");
  EXPECT_EQ(Irreps::spherical_harmonics(3).str(), "1x0e+1x1o+1x2e+1x3o");
  for (int l = 0; l <= 10; ++l) EXPECT_EQ(Irreps::spherical_harmonics(l).dim(), (l + 1) * (l + 1));
}

TEST(Irrep, RejectsInvalidFields) {
  EXPECT_THROW(Irrep(-1, 1), std::invalid_argument);
  EXPECT_THROW(Irrep(1, 0), std::invalid_argument);
  EXPECT_EQ(Irrep(3, -1).dim(), 7);
}
