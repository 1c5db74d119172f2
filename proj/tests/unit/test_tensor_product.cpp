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

#include <cmath>
#include <random>

#include "equitensor/o3.hpp"
#include "equitensor/tensor_product.hpp"
#include "oracles.hpp"

using namespace equitensor;

namespace {

Vector normal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

double equivariance_residual(const TensorProductSpec& tp, std::mt19937_64& rng, int trials = 10) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const O3Element g = rand_o3(rng);
    const Vector w = normal(tp.weight_numel(), rng);
    const Vector x1 = normal(tp.irreps_in1().dim(), rng), x2 = normal(tp.irreps_in2().dim(), rng);
    const Vector lhs = tp.evaluate(w, d_irreps(tp.irreps_in1(), g) * x1, d_irreps(tp.irreps_in2(), g) * x2);
    const Vector rhs = d_irreps(tp.irreps_out(), g) * tp.evaluate(w, x1, x2);
    if (lhs.size()) worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

Irreps random_irreps(std::mt19937_64& rng, int lmax, int max_mul, int max_terms) {
  std::uniform_int_distribution<int> l(0, lmax), mul(1, max_mul), terms(1, max_terms), p(0, 1);
  std::vector<MulIrrep> items;
  const int n = terms(rng);
  for (int k = 0; k < n; ++k) items.push_back({mul(rng), Irrep(l(rng), p(rng) ? 1 : -1)});
  return Irreps(items);
}

Instruction path(int a, int b, int c, ConnectionMode mode = ConnectionMode::uvw) {
  Instruction i;
  i.i_in1 = a;
  i.i_in2 = b;
  i.i_out = c;
  i.mode = mode;
  return i;
}

}  // namespace

TEST(Validate, SelectionRuleExamples) {
  const Irreps v("1o"), s("0e");
  EXPECT_TRUE(validate(v, v, Irreps("0e"), {path(0, 0, 0)}).ok());
  const auto parity = validate(v, v, Irreps("0o"), {path(0, 0, 0)});
  ASSERT_FALSE(parity.ok());
  EXPECT_NE(parity.errors[0].find("parity"), std::string::npos);
  const auto range = validate(s, s, Irreps("1e"), {path(0, 0, 0)});
  ASSERT_FALSE(range.ok());
  EXPECT_NE(range.errors[0].find("l"), std::string::npos);
  EXPECT_FALSE(validate(s, s, s, {path(1, 0, 0)}).ok());
}

TEST(Validate, ModeMultiplicities) {
  const Irreps a("2x0e"), b("3x0e");
  EXPECT_TRUE(validate(a, b, Irreps("2x0e"), {path(0, 0, 0, ConnectionMode::uvu)}).ok());
  EXPECT_FALSE(validate(a, b, Irreps("3x0e"), {path(0, 0, 0, ConnectionMode::uvu)}).ok());
  EXPECT_FALSE(validate(a, b, Irreps("2x0e"), {path(0, 0, 0, ConnectionMode::uuu)}).ok());
  EXPECT_TRUE(validate(a, a, Irreps("2x0e"), {path(0, 0, 0, ConnectionMode::uuu)}).ok());
  EXPECT_TRUE(validate(a, b, Irreps("6x0e"), {path(0, 0, 0, ConnectionMode::uvuv)}).ok());
  EXPECT_FALSE(validate(a, b, Irreps("5x0e"), {path(0, 0, 0, ConnectionMode::uvuv)}).ok());
}

TEST(Validate, SpecConstructorThrowsWithReport) {
  try {
    TensorProductSpec(Irreps("1o"), Irreps("1o"), Irreps("0o"), {path(0, 0, 0)});
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_EQ(e.report().errors.size(), 1u);
  }
}

TEST(WeightNumel, TwoPathsIntoEachOutput) {
  const auto tp = fully_connected(Irreps("1o+1o"), Irreps("0e+1o"), Irreps("0e+1o"));
  EXPECT_EQ(tp.instructions().size(), 4u);
  EXPECT_EQ(tp.weight_numel(), 4);
  EXPECT_EQ(tp.num_paths_into(0), 2);
  EXPECT_EQ(tp.num_paths_into(1), 2);
  EXPECT_NE(tp.describe().find("paths: 4, weights: 4"), std::string::npos);
}

TEST(WeightNumel, ModeCounts) {
  const TensorProductSpec uvw(Irreps("16x0e"), Irreps("8x0e"), Irreps("4x0e"), {path(0, 0, 0)});
  EXPECT_EQ(uvw.weight_numel(), 512);
  const TensorProductSpec uvu(Irreps("16x0e"), Irreps("8x0e"), Irreps("16x0e"), {path(0, 0, 0, ConnectionMode::uvu)});
  EXPECT_EQ(uvu.weight_numel(), 128);
  const TensorProductSpec uuu(Irreps("5x1o"), Irreps("5x1o"), Irreps("5x1e"), {path(0, 0, 0, ConnectionMode::uuu)});
  EXPECT_EQ(uuu.weight_numel(), 5);
  const TensorProductSpec uvuv(Irreps("2x1o"), Irreps("3x0e"), Irreps("6x1o"), {path(0, 0, 0, ConnectionMode::uvuv)});
  EXPECT_EQ(uvuv.weight_numel(), 6);
}

TEST(FullyConnected, TrivialAndEmptyCases) {
  EXPECT_EQ(fully_connected(Irreps("0e"), Irreps("0e"), Irreps("0e")).instructions().size(), 1u);
  const auto none = fully_connected(Irreps("1o"), Irreps("1o"), Irreps("2o"));
  EXPECT_TRUE(none.instructions().empty());
  EXPECT_FALSE(none.warnings().empty());
  const Vector out = none.evaluate(Vector(), Vector::Ones(3), Vector::Ones(3));
  EXPECT_EQ(out.size(), 5);
  EXPECT_EQ(out.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Evaluate, ScalarProduct) {
  const TensorProductSpec tp(Irreps("0e"), Irreps("0e"), Irreps("0e"), {path(0, 0, 0)});
  const Vector out = tp.evaluate(Vector::Constant(1, 1.5), Vector::Constant(1, 2.0), Vector::Constant(1, -3.0));
  EXPECT_DOUBLE_EQ(out[0], -9.0);
}

TEST(Evaluate, DotProductOfUnitVectors) {
  const TensorProductSpec tp(Irreps("1o"), Irreps("1o"), Irreps("0e"), {path(0, 0, 0)});
  const Vector e = Eigen::Vector3d(0.6, 0.0, 0.8);
  // sqrt(1) * (1/sqrt3) * |e|^2 scaled up by the sqrt(2*0+1) path factor
  EXPECT_NEAR(tp.evaluate(Vector::Ones(1), e, e)[0], 1.0 / std::sqrt(3.0), 1e-15);
  const Vector f = Eigen::Vector3d(0.0, 1.0, 0.0);
  EXPECT_NEAR(tp.evaluate(Vector::Ones(1), e, f)[0], 0.0, 1e-15);
}

TEST(Evaluate, MatchesBruteForceSummation) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Irreps a = random_irreps(rng, 2, 3, 3), b = random_irreps(rng, 2, 3, 3), c = random_irreps(rng, 3, 3, 4);
    const auto tp = fully_connected(a, b, c);
    std::vector<std::array<int, 3>> paths;
    for (const auto& ins : tp.instructions()) paths.push_back({ins.i_in1, ins.i_in2, ins.i_out});
    const Vector w = normal(tp.weight_numel(), rng);
    const Vector x1 = normal(a.dim(), rng), x2 = normal(b.dim(), rng);
    const Vector expected = oracle::brute_force_uvw(a, b, c, paths, w, x1, x2);
    EXPECT_LT((tp.evaluate(w, x1, x2) - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Evaluate, DimensionMismatchThrows) {
  const auto tp = fully_connected(Irreps("1o"), Irreps("1o"), Irreps("0e"));
  EXPECT_THROW((void)tp.evaluate(Vector::Ones(1), Vector::Ones(2), Vector::Ones(3)), std::invalid_argument);
  EXPECT_THROW((void)tp.evaluate(Vector::Ones(2), Vector::Ones(3), Vector::Ones(3)), std::invalid_argument);
}

TEST(Evaluate, Bilinear) {
  std::mt19937_64 rng(18);
  const auto tp = fully_connected(Irreps("2x0e+1o+2e"), Irreps("0e+2x1o"), Irreps("2x0e+1o+1e+2e"));
  const Vector w = normal(tp.weight_numel(), rng);
  const Vector x = normal(tp.irreps_in1().dim(), rng), y = normal(tp.irreps_in1().dim(), rng);
  const Vector z = normal(tp.irreps_in2().dim(), rng), u = normal(tp.irreps_in2().dim(), rng);
  const double alpha = 0.7, beta = -1.3;
  EXPECT_LT((tp.evaluate(w, alpha * x + beta * y, z) - alpha * tp.evaluate(w, x, z) - beta * tp.evaluate(w, y, z))
                .cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((tp.evaluate(w, x, alpha * z + beta * u) - alpha * tp.evaluate(w, x, z) - beta * tp.evaluate(w, x, u))
                .cwiseAbs().maxCoeff(), 1e-12);
  // linear in the weights too
  const Vector w2 = normal(tp.weight_numel(), rng);
  EXPECT_LT((tp.evaluate(w + w2, x, z) - tp.evaluate(w, x, z) - tp.evaluate(w2, x, z)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Equivariance, RandomFullyConnectedSpecs) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const auto tp = fully_connected(random_irreps(rng, 3, 2, 3), random_irreps(rng, 3, 2, 3), random_irreps(rng, 3, 2, 4));
    EXPECT_LT(equivariance_residual(tp, rng), 1e-9);
  }
}

TEST(Equivariance, AllConnectionModes) {
  std::mt19937_64 rng(20);
  const TensorProductSpec uvu(Irreps("3x1o+2x2e"), Irreps("2x1e"), Irreps("3x1o+3x2o+2x3e"),
                              {path(0, 0, 0, ConnectionMode::uvu), path(0, 0, 1, ConnectionMode::uvu),
                               path(1, 0, 2, ConnectionMode::uvu)});
  const TensorProductSpec uuu(Irreps("2x1o"), Irreps("2x2o"), Irreps("2x1e+2x3e"),
                              {path(0, 0, 0, ConnectionMode::uuu), path(0, 0, 1, ConnectionMode::uuu)});
  const TensorProductSpec uvuv(Irreps("2x1o"), Irreps("3x1o"), Irreps("6x0e+6x2e"),
                               {path(0, 0, 0, ConnectionMode::uvuv), path(0, 0, 1, ConnectionMode::uvuv)});
  for (const auto* tp : {&uvu, &uuu, &uvuv}) EXPECT_LT(equivariance_residual(*tp, rng), 1e-9);
}

TEST(Equivariance, ConvenienceConstructors) {
  std::mt19937_64 rng(21);
  EXPECT_LT(equivariance_residual(full_tensor_product(Irreps("1o+2e"), Irreps("0o+1e")), rng), 1e-9);
  EXPECT_LT(equivariance_residual(tensor_square(Irreps("2x1o+0e")), rng), 1e-9);
  const Linear lin(Irreps("2x0e+3x1o+1e"), Irreps("0e+2x1o+2e"));
  for (int t = 0; t < 10; ++t) {
    const O3Element g = rand_o3(rng);
    const Vector w = normal(lin.weight_numel(), rng), x = normal(lin.irreps_in().dim(), rng);
    const Vector lhs = lin.evaluate(w, d_irreps(lin.irreps_in(), g) * x);
    const Vector rhs = d_irreps(lin.irreps_out(), g) * lin.evaluate(w, x);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(FullTensorProduct, VectorTimesVector) {
  const auto tp = full_tensor_product(Irreps("1o"), Irreps("1o"));
  EXPECT_EQ(tp.irreps_out().str(), "1x0e+1x1e+1x2e");
  EXPECT_EQ(tp.irreps_out().dim(), 9);
  EXPECT_EQ(tp.weight_numel(), 0);
}

TEST(FullTensorProduct, ScalarKeepsIrrepsWithParity) {
  const auto tp = full_tensor_product(Irreps("0o"), Irreps("2x1o+2e"));
  EXPECT_EQ(tp.irreps_out().str(), "2x1e+1x2o");
}

TEST(FullTensorProduct, ConservesDimensionAndNorm) {
  std::mt19937_64 rng(22);
  EXPECT_EQ(full_tensor_product(Irreps("1o+2e"), Irreps("1o")).irreps_out().dim(), 24);
  for (int trial = 0; trial < 20; ++trial) {
    const Irreps a = random_irreps(rng, 3, 3, 3), b = random_irreps(rng, 3, 3, 3);
    const auto tp = full_tensor_product(a, b);
    EXPECT_EQ(tp.irreps_out().dim(), a.dim() * b.dim());
    // the decomposition is an orthogonal change of basis of x (x) y
    const Vector x = normal(a.dim(), rng), y = normal(b.dim(), rng);
    EXPECT_NEAR(tp.evaluate(Vector(), x, y).norm(), x.norm() * y.norm(), 1e-10 * x.norm() * y.norm());
  }
}

TEST(TensorSquare, Examples) {
  EXPECT_EQ(tensor_square(Irreps("0e")).irreps_out().str(), "1x0e");
  EXPECT_EQ(tensor_square(Irreps("1o")).irreps_out().str(), "1x0e+1x1e+1x2e");
}

TEST(Linear, WeightCountsAndWarnings) {
  const Linear a(Irreps("2x0e"), Irreps("3x0e"));
  EXPECT_EQ(a.weight_numel(), 6);
  EXPECT_TRUE(a.warnings().empty());
  const Linear b(Irreps("1x1o"), Irreps("1x1e"));
  EXPECT_EQ(b.weight_numel(), 0);
  EXPECT_FALSE(b.warnings().empty());
  EXPECT_EQ(b.evaluate(Vector(), Vector::Ones(3)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Linear, MixesChannels) {
  const Linear lin(Irreps("2x0e"), Irreps("1x0e"));
  Vector w(2);
  w << 1.0, 3.0;
  Vector x(2);
  x << 2.0, -1.0;
  EXPECT_NEAR(lin.evaluate(w, x)[0], (2.0 - 3.0) / std::sqrt(2.0), 1e-15);
}

TEST(Generality, SpanMatchesEquivariantBilinearMaps) {
  // The linearized map weights -> bilinear tensor must have rank equal to the
  // dimension of all equivariant bilinear maps, computed independently.
  const std::vector<std::array<const char*, 3>> cases = {
      {"1o", "1o", "0e+1e+2e"}, {"0e+1o", "1o+2e", "0e+1o+1e+2o"}, {"2x1o", "1e", "2x1o+0o"}, {"2e", "2e", "0e+2e+1e"}};
  for (const auto& [s1, s2, s3] : cases) {
    const Irreps a(s1), b(s2), c(s3);
    const auto tp = fully_connected(a, b, c);
    const int n = tp.weight_numel();
    Matrix lin(static_cast<Eigen::Index>(c.dim()) * a.dim() * b.dim(), n);
    for (int k = 0; k < n; ++k) {
      const Vector w = Vector::Unit(n, k);
      const Matrix t = oracle::bilinear_tensor([&](const Vector& x, const Vector& y) { return tp.evaluate(w, x, y); },
                                               a.dim(), b.dim(), c.dim());
      lin.col(k) = Eigen::Map<const Vector>(t.data(), t.size());
    }
    int triples = 0;
    for (const auto& ins : tp.instructions())
      triples += a[ins.i_in1].mul * b[ins.i_in2].mul * c[ins.i_out].mul;
    EXPECT_EQ(numerical_rank(lin), triples) << s1 << " " << s2 << " " << s3;
    EXPECT_EQ(oracle::equivariant_bilinear_dimension(a, b, c), triples) << s1 << " " << s2 << " " << s3;
  }
}

TEST(Normalization, OutputsHaveUnitSecondMoment) {
  std::mt19937_64 rng(23);
  const auto tp = fully_connected(Irreps("4x0e+3x1o+2x2e"), Irreps("0e+1o+2e"), Irreps("3x0e+2x1o+2x2e+1x1e"));
  const int samples = 10000;
  Vector second = Vector::Zero(tp.irreps_out().dim());
  for (int s = 0; s < samples; ++s) {
    const Vector out = tp.evaluate(normal(tp.weight_numel(), rng), normal(tp.irreps_in1().dim(), rng),
                                   normal(tp.irreps_in2().dim(), rng));
    second += out.cwiseProduct(out);
  }
  second /= samples;
  EXPECT_GT(second.minCoeff(), 0.5);
  EXPECT_LT(second.maxCoeff(), 2.0);
}

TEST(Json, RoundTrip) {
  const TensorProductSpec tp(Irreps("2x1o+0e"), Irreps("1o"), Irreps("2x0e+2x1e+1x1o"),
                             {path(0, 0, 0), path(0, 0, 1, ConnectionMode::uvu), path(1, 0, 2)});
  const auto back = tensor_product_from_json(to_json(tp));
  EXPECT_EQ(back.irreps_in1(), tp.irreps_in1());
  EXPECT_EQ(back.irreps_out(), tp.irreps_out());
  ASSERT_EQ(back.instructions().size(), 3u);
  EXPECT_EQ(back.instructions()[1].mode, ConnectionMode::uvu);
  EXPECT_EQ(back.weight_numel(), tp.weight_numel());
  std::mt19937_64 rng(24);
  const Vector w = normal(tp.weight_numel(), rng), x = normal(7, rng), y = normal(3, rng);
  EXPECT_LT((back.evaluate(w, x, y) - tp.evaluate(w, x, y)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Json, DefaultsToFullyConnectedAndRejectsGarbage) {
  const auto tp = tensor_product_from_json(R"({"irreps_in1": "1o+1o", "irreps_in2": "0e+1o", "irreps_out": "0e+1o"})");
  EXPECT_EQ(tp.weight_numel(), 4);
  EXPECT_THROW((void)tensor_product_from_json("{"), std::invalid_argument);
  EXPECT_THROW((void)tensor_product_from_json(R"({"irreps_in1": "1q"})"), std::invalid_argument);
}
