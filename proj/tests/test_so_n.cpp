#include <gtest/gtest.h>

#include <cmath>

#include <gyrochap/sampling.hpp>
#include <gyrochap/so_n.hpp>

using namespace gyrochap;

TEST(SoN, WedgeOfBasisVectors) {
  const Vec e1 = Vec::Unit(3, 0), e2 = Vec::Unit(3, 1);
  Mat expected = Mat::Zero(3, 3);
  expected(0, 1) = 1;
  expected(1, 0) = -1;
  EXPECT_LT(max_abs(wedge(e1, e2) - expected), 1e-15);
  EXPECT_NEAR(lie_inner(wedge(e1, e2), wedge(e1, e2)), 1.0, 1e-15);
}

TEST(SoN, WedgeActsByContraction) {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const Vec a = random_unit(5, rng), b = random_unit(5, rng), c = random_unit(5, rng);
    const Vec expect = a * b.dot(c) - b * a.dot(c);
    EXPECT_LT((wedge(a, b) * c - expect).norm(), 1e-14);
  }
}

TEST(SoN, PairingOfWedges) {
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const int n = 3 + k % 4;
    const Vec a = random_unit(n, rng), b = random_unit(n, rng), c = random_unit(n, rng),
              d = random_unit(n, rng);
    const double expect = a.dot(c) * b.dot(d) - a.dot(d) * b.dot(c);
    EXPECT_NEAR(lie_inner(wedge(a, b), wedge(c, d)), expect, 1e-14);
  }
}

TEST(SoN, ExponentialIsOrthogonalWithUnitDeterminant) {
  Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    const int n = 3 + k % 4;
    Mat X = Mat::Random(n, n) * uniform(rng, 0.1, 4.0);
    X = (X - X.transpose()).eval();
    const Mat E = so_exp(X);
    EXPECT_LT(max_abs(E.transpose() * E - Mat::Identity(n, n)), 1e-12);
    EXPECT_NEAR(E.determinant(), 1.0, 1e-12);
  }
}

TEST(SoN, ExponentialOfPlaneRotation) {
  const double th = 0.7;
  Mat X = th * wedge(Vec::Unit(4, 0), Vec::Unit(4, 1));
  const Mat E = so_exp(X);
  EXPECT_NEAR(E(0, 0), std::cos(th), 1e-15);
  EXPECT_NEAR(E(0, 1), std::sin(th), 1e-15);
  EXPECT_NEAR(E(1, 0), -std::sin(th), 1e-15);
  EXPECT_NEAR(E(2, 2), 1.0, 1e-15);
}

TEST(SoN, ProjectorIsIdempotentAndFixesTheGammaPlane) {
  Rng rng(6);
  for (int k = 0; k < 30; ++k) {
    const int n = 3 + k % 4;
    const Vec g = random_unit(n, rng);
    Mat X = Mat::Random(n, n);
    X = (X - X.transpose()).eval();
    const Mat P = project_to_gamma_plane(X, g);
    EXPECT_LT(max_abs(project_to_gamma_plane(P, g) - P), 1e-14);
    const Vec u = random_tangent(g, rng);
    EXPECT_LT(max_abs(project_to_gamma_plane(wedge(g, u), g) - wedge(g, u)), 1e-14);
    // the complement kills γ and is orthogonal to γ ∧ ℝⁿ
    EXPECT_LT(((X - P) * g).norm(), 1e-14);
    EXPECT_NEAR(lie_inner(X - P, wedge(g, u)), 0.0, 1e-14);
  }
}

TEST(SoN, InertiaScalesEntries) {
  const Vec a = (Vec(3) << 1.0, 2.0, 3.0).finished();
  const Mat X = wedge(Vec::Unit(3, 0), Vec::Unit(3, 2));
  const Mat Y = inertia_apply(a, X);
  EXPECT_DOUBLE_EQ(Y(0, 2), 3.0);
  EXPECT_DOUBLE_EQ(Y(2, 0), -3.0);
  EXPECT_TRUE(is_skew(Y));
}

TEST(SoN, Orthonormalize) {
  Mat g = so_exp(0.3 * wedge(Vec::Unit(3, 0), Vec::Unit(3, 2)));
  g(0, 0) += 1e-7;
  const Mat h = orthonormalize(g);
  EXPECT_LT(max_abs(h.transpose() * h - Mat::Identity(3, 3)), 1e-13);
}
