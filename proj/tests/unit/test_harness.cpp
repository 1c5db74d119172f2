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

#include <algorithm>
#include <cmath>
#include <random>

#include "equitensor/harness.hpp"
#include "equitensor/spherical_harmonics.hpp"

using namespace equitensor;

namespace {

Eigen::MatrixX3d random_cloud(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Eigen::MatrixX3d pos(n, 3);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) pos(i, k) = d(rng);
  return pos;
}

}  // namespace

TEST(Equivariance, IdentityIsExact) {
  const Irreps v("1o");
  const auto report = check_equivariance([](const std::vector<Vector>& x) { return x[0]; }, {v}, v, 10, 1e-15, 1);
  EXPECT_EQ(report.max_residual, 0.0);
  EXPECT_EQ(report.trials.size(), 10u);
  EXPECT_TRUE(report.passed());
}

TEST(Equivariance, SphericalHarmonicsPass) {
  const auto f = [](const std::vector<Vector>& x) {
    return spherical_harmonics_point(4, Eigen::Vector3d(x[0]), false);
  };
  const auto report = assert_equivariant(f, {Irreps("1o")}, Irreps::spherical_harmonics(4), 20, 1e-9, 2);
  EXPECT_LT(report.max_residual, 1e-9);
}

TEST(Equivariance, ComponentSwapIsCaught) {
  const auto broken = [](const std::vector<Vector>& x) {
    Vector y = x[0];
    std::swap(y[0], y[1]);
    return y;
  };
  const auto report = check_equivariance(broken, {Irreps("1o")}, Irreps("1o"), 10, 1e-9, 3);
  EXPECT_FALSE(report.passed());
  EXPECT_GE(report.worst_trial, 0);
  EXPECT_NE(report.summary().find("FAIL"), std::string::npos);
  EXPECT_THROW(assert_equivariant(broken, {Irreps("1o")}, Irreps("1o"), 10, 1e-9, 3), EquivarianceFailure);
}

TEST(Equivariance, ParityIsChecked) {
  // correct under rotations, wrong under inversion
  const auto f = [](const std::vector<Vector>& x) { return x[0]; };
  EXPECT_FALSE(check_equivariance(f, {Irreps("1o")}, Irreps("1e"), 20, 1e-9, 4).passed());
}

TEST(Equivariance, ReportsAreReproducible) {
  const auto f = [](const std::vector<Vector>& x) { return Vector(x[0] * 2.0); };
  const auto a = check_equivariance(f, {Irreps("2e")}, Irreps("2e"), 5, 1e-9, 77);
  const auto b = check_equivariance(f, {Irreps("2e")}, Irreps("2e"), 5, 1e-9, 77);
  ASSERT_EQ(a.trials.size(), b.trials.size());
  for (std::size_t t = 0; t < a.trials.size(); ++t) EXPECT_EQ(a.trials[t].residual, b.trials[t].residual);
}

TEST(RadiusGraph, Examples) {
  Eigen::MatrixX3d pos(2, 3);
  pos << 0, 0, 0, 0.5, 0, 0;
  const EdgeList both = radius_graph(pos, 1.0);
  ASSERT_EQ(both.size(), 2u);
  EXPECT_EQ(both.src, (std::vector<int>{0, 1}));
  EXPECT_EQ(both.dst, (std::vector<int>{1, 0}));
  pos.row(1) << 0, 0, 0;
  EXPECT_EQ(radius_graph(pos, 1.0).size(), 0u);
  pos.row(1) << 2, 0, 0;
  EXPECT_EQ(radius_graph(pos, 1.0).size(), 0u);
}

TEST(ScatterSum, Examples) {
  Matrix values(3, 2);
  values << 1, 2, 3, 4, 5, 6;
  const Matrix single = scatter_sum(values.topRows(1), {2}, 3);
  EXPECT_EQ(single.row(2), values.row(0));
  EXPECT_EQ(single.topRows(2).cwiseAbs().maxCoeff(), 0.0);
  const Matrix summed = scatter_sum(values, {1, 1, 0}, 2);
  EXPECT_EQ(summed(1, 0), 4.0);
  EXPECT_EQ(summed(1, 1), 6.0);
  EXPECT_EQ(summed(0, 1), 6.0);
}

TEST(ScatterSum, EdgeOrderDoesNotMatter) {
  std::mt19937_64 rng(5);
  const int edges = 40;
  Matrix values = Matrix::Random(edges, 3);
  std::vector<int> dst(edges);
  std::uniform_int_distribution<int> node(0, 6);
  for (auto& d : dst) d = node(rng);
  std::vector<int> order(edges);
  for (int e = 0; e < edges; ++e) order[e] = e;
  std::shuffle(order.begin(), order.end(), rng);
  Matrix shuffled(edges, 3);
  std::vector<int> shuffled_dst(edges);
  for (int e = 0; e < edges; ++e) {
    shuffled.row(e) = values.row(order[e]);
    shuffled_dst[e] = dst[order[e]];
  }
  EXPECT_LT((scatter_sum(values, dst, 7) - scatter_sum(shuffled, shuffled_dst, 7)).cwiseAbs().maxCoeff(), 1e-12);
}

class PolynomialTest : public ::testing::Test {
 protected:
  Polynomial poly{Irreps("0e + 1o + 2e")};
  std::mt19937_64 rng{6};
};

TEST_F(PolynomialTest, Shapes) {
  EXPECT_EQ(poly.irreps_sh().str(), "1x0e+1x1o+1x2e+1x3o");
  EXPECT_EQ(poly.irreps_out().dim(), 9);
  EXPECT_EQ(poly.weight_numel(), poly.tp1().weight_numel() + poly.tp2().weight_numel());
  EXPECT_THROW((void)poly.forward(Eigen::MatrixX3d(0, 3), 1.0, 1.0, 1.0, random_normal(poly.weight_numel(), rng)),
               DomainError);
}

TEST_F(PolynomialTest, TranslationRotationParity) {
  const Eigen::MatrixX3d pos = random_cloud(8, rng);
  const Vector w = random_normal(poly.weight_numel(), rng);
  const Vector out = poly.forward(pos, 2.5, 3.0, 8.0, w);
  EXPECT_GT(out.norm(), 0.0);

  const Eigen::RowVector3d shift(1.3, -0.4, 2.2);
  const Vector moved = poly.forward(pos.rowwise() + shift, 2.5, 3.0, 8.0, w);
  EXPECT_LT((moved - out).cwiseAbs().maxCoeff(), 1e-9);

  const O3Element g{rand_rotation(rng), false};
  const Vector rotated = poly.forward(pos * g.matrix().transpose(), 2.5, 3.0, 8.0, w);
  EXPECT_LT((rotated - d_irreps(poly.irreps_out(), g) * out).cwiseAbs().maxCoeff(), 1e-6);

  const Vector inverted = poly.forward(-pos, 2.5, 3.0, 8.0, w);
  EXPECT_LT((inverted - d_irreps(poly.irreps_out(), O3Element{{}, true}) * out).cwiseAbs().maxCoeff(), 1e-6);
}

TEST_F(PolynomialTest, BrokenEdgeFeaturesFailRotation) {
  const Eigen::MatrixX3d pos = random_cloud(8, rng);
  const Vector w = random_normal(poly.weight_numel(), rng);
  const auto squash = [](const Vector3& v) { return Vector3(v.x(), 2.0 * v.y(), v.z()); };
  const O3Element g{rand_rotation(rng), false};
  const Vector out = poly.forward(pos, 2.5, 3.0, 8.0, w, squash);
  const Vector rotated = poly.forward(pos * g.matrix().transpose(), 2.5, 3.0, 8.0, w, squash);
  EXPECT_GT((rotated - d_irreps(poly.irreps_out(), g) * out).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Composition, StagesComposeEquivariantly) {
  // tp1 applied to (sh, sh), then tp2 applied to (mid, mid)
  const Polynomial poly(Irreps("0e+1o"));
  std::mt19937_64 rng(7);
  const Vector w1 = random_normal(poly.tp1().weight_numel(), rng);
  const Vector w2 = random_normal(poly.tp2().weight_numel(), rng);
  const Irreps& sh = poly.irreps_sh();
  const Irreps& mid = poly.irreps_mid();
  const EquivariantFn f = [&](const std::vector<Vector>& x) { return poly.tp1().evaluate(w1, x[0], x[1]); };
  const EquivariantFn h = [&](const std::vector<Vector>& x) { return poly.tp2().evaluate(w2, x[0], x[0]); };
  const auto rf = check_equivariance(f, {sh, sh}, mid, 3, 1e-9, 1);
  const auto rh = check_equivariance(h, {mid}, poly.irreps_out(), 3, 1e-9, 2);
  ASSERT_TRUE(rf.passed());
  ASSERT_TRUE(rh.passed());
  const EquivariantFn hf = [&](const std::vector<Vector>& x) { return h({f(x)}); };
  const auto rhf = check_equivariance(hf, {sh, sh}, poly.irreps_out(), 3, rf.tol + rh.tol, 3);
  EXPECT_TRUE(rhf.passed()) << rhf.summary();
}

TEST(Composition, WeightsActAsScalars) {
  const auto tp = fully_connected(Irreps("2x1o+0e"), Irreps("1o+2e"), Irreps("0e+1o+1e+2e"));
  std::mt19937_64 rng(8);
  for (int draw = 0; draw < 10; ++draw) {
    const Vector w = random_normal(tp.weight_numel(), rng);
    const EquivariantFn f = [&](const std::vector<Vector>& x) { return tp.evaluate(w, x[0], x[1]); };
    EXPECT_LT(check_equivariance(f, {tp.irreps_in1(), tp.irreps_in2()}, tp.irreps_out(), 5, 1e-9, draw).max_residual,
              1e-9);
  }
}

TEST(Activation, Rescaling) {
  const auto id = rescale_activation([](double x) { return x; });
  EXPECT_NEAR(id(1.7), 1.7, 1e-12);
  const auto two = rescale_activation([](double) { return 2.0; });
  EXPECT_NEAR(two(0.3), 1.0, 1e-12);
  const auto relu = rescale_activation([](double x) { return std::max(x, 0.0); });
  // E[relu(Z)^2] = 1/2; symmetric nodes make the quadrature exact despite the kink
  EXPECT_NEAR(relu(1.0), std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(gaussian_second_moment([](double x) { return x * x; }), 3.0, 1e-10);
  EXPECT_THROW((void)rescale_activation([](double) { return 0.0; }), DomainError);
}

TEST(ComponentNorm, Statistic) {
  std::mt19937_64 rng(9);
  const Irreps irreps("4x0e+3x1o+2x2e");
  const int n = 4000;
  Matrix samples(n, irreps.dim());
  for (int r = 0; r < n; ++r) samples.row(r) = random_normal(irreps.dim(), rng).transpose();
  const double sigma = std::sqrt(2.0 / irreps.dim() / n);
  EXPECT_NEAR(component_norm_statistic(samples, irreps), 1.0, 3 * sigma);
  EXPECT_NEAR(component_norm_statistic(2.0 * samples, irreps), 4.0, 12 * sigma);
  EXPECT_EQ(component_norm_statistic(Matrix::Zero(3, irreps.dim()), irreps), 0.0);
}
