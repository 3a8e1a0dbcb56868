#include <gtest/gtest.h>

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_rf.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <random>

#include <gyrochap/elliptic.hpp>

using namespace gyrochap::elliptic;

TEST(Elliptic, CarlsonAgainstReference) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> U(0.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const double x = U(rng), y = U(rng) + 1e-3, z = U(rng) + 1e-3;
    const double ref = boost::math::ellint_rf(x, y, z);
    EXPECT_NEAR(carlson_rf(x, y, z), ref, 1e-14 * ref);
  }
  EXPECT_NEAR(carlson_rf(1, 1, 1), 1.0, 1e-15);
  EXPECT_NEAR(carlson_rf(0, 1, 1), M_PI / 2, 1e-15);
}

TEST(Elliptic, FirstKindAgainstReference) {
  for (double m : {0.0, 0.1, 0.5, 0.9, 0.999}) {
    EXPECT_NEAR(ellint_K(m), boost::math::ellint_1(std::sqrt(m)), 1e-13);
    for (double phi : {0.1, 1.0, 1.5, 3.0, 7.0, -2.0})
      EXPECT_NEAR(ellint_F(phi, m), boost::math::ellint_1(std::sqrt(m), phi), 1e-12)
          << m << " " << phi;
  }
}

TEST(Elliptic, JacobiAgainstReference) {
  for (double m : {0.0, 0.3, 0.8, 0.99, 1.0})
    for (double u : {-3.0, -0.4, 0.0, 0.7, 2.5, 11.0}) {
      double cn, dn;
      const double sn = boost::math::jacobi_elliptic(std::sqrt(m), u, &cn, &dn);
      const Jacobi j = jacobi(u, m);
      EXPECT_NEAR(j.sn, sn, 1e-13) << m << " " << u;
      EXPECT_NEAR(j.cn, cn, 1e-13);
      EXPECT_NEAR(j.dn, dn, 1e-13);
    }
}

TEST(Elliptic, CubicRoots) {
  auto r = real_cubic_roots(1, -6, 11, -6);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], 1, 1e-13);
  EXPECT_NEAR(r[1], 2, 1e-13);
  EXPECT_NEAR(r[2], 3, 1e-13);
  r = real_cubic_roots(1, 0, 1, 1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0] * r[0] * r[0] + r[0] + 1, 0, 1e-14);
  r = real_cubic_roots(0, 1, -3, 2);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 1, 1e-14);
  EXPECT_NEAR(r[1], 2, 1e-14);
}

namespace {

struct Case {
  double g2, g3;
  RootKind kind;
};

// invariants built from chosen roots: g₂ = −4(e₁e₂+e₁e₃+e₂e₃), g₃ = 4e₁e₂e₃
Case from_roots(double e1, double e2, RootKind k) {
  const double e3 = -e1 - e2;
  return {-4 * (e1 * e2 + e1 * e3 + e2 * e3), 4 * e1 * e2 * e3, k};
}

const Case kCases[] = {
    from_roots(2.0, 0.5, RootKind::ThreeReal),
    from_roots(1.0, -0.2, RootKind::ThreeReal),
    {2.0, 3.0, RootKind::OneReal},
    {1.0, -2.0, RootKind::OneReal},
    from_roots(1.0, -0.5, RootKind::DoubleLower),
    from_roots(0.5, 0.5, RootKind::DoubleUpper),
};

}  // namespace

TEST(Weierstrass, RootKinds) {
  for (const auto& c : kCases) EXPECT_EQ(Weierstrass(c.g2, c.g3).kind(), c.kind) << c.g2;
  EXPECT_EQ(Weierstrass(0, 0).kind(), RootKind::Triple);
}

TEST(Weierstrass, SatisfiesDifferentialEquations) {
  for (const auto& c : kCases) {
    const Weierstrass W(c.g2, c.g3);
    for (double t : {0.05, 0.3, 0.7, 1.1}) {
      const double P = W.p(t), dP = W.dp(t);
      const double rhs = 4 * P * P * P - c.g2 * P - c.g3;
      EXPECT_NEAR(dP * dP, rhs, 1e-9 * std::max(1.0, std::abs(rhs))) << to_string(c.kind) << t;
      const double h = 1e-4 * t;  // ℘ ~ 1/t² near the pole
      const double d2 = (W.p(t + h) - 2 * P + W.p(t - h)) / (h * h);
      EXPECT_NEAR(d2, 6 * P * P - c.g2 / 2, 1e-4 * std::max(1.0, std::abs(d2)));
      const double d1 = (W.p(t + h) - W.p(t - h)) / (2 * h);
      EXPECT_NEAR(d1, dP, 1e-6 * std::max(1.0, std::abs(dP)));
    }
  }
}

TEST(Weierstrass, LaurentExpansionAtZero) {
  for (const auto& c : kCases) {
    const Weierstrass W(c.g2, c.g3);
    for (double t : {1e-2, 3e-2}) {
      const double series = 1 / (t * t) + c.g2 * t * t / 20 + c.g3 * std::pow(t, 4) / 28;
      EXPECT_NEAR(W.p(t), series, 1e-9 * series) << to_string(c.kind);
    }
  }
  EXPECT_DOUBLE_EQ(Weierstrass(0, 0).p(0.5), 4.0);
}

TEST(Weierstrass, Periodicity) {
  for (const auto& c : kCases) {
    const Weierstrass W(c.g2, c.g3);
    if (!std::isfinite(W.omega1())) continue;
    const double w = W.omega1();
    EXPECT_NEAR(W.p(0.3 + 2 * w), W.p(0.3), 1e-9 * W.p(0.3));
    EXPECT_NEAR(W.dp(w), 0.0, 1e-7);
    EXPECT_NEAR(W.p(w), c.kind == RootKind::OneReal ? W.e2() : W.e1(), 1e-10);
  }
}

TEST(Weierstrass, BoundedCycle) {
  for (const auto& c : kCases) {
    if (c.kind != RootKind::ThreeReal) continue;
    const Weierstrass W(c.g2, c.g3);
    EXPECT_NEAR(W.p_bounded(0), W.e3(), 1e-12);
    EXPECT_NEAR(W.p_bounded(W.omega1()), W.e2(), 1e-12);
    for (double s : {0.1, 0.6, 1.3, 2.9}) {
      const double P = W.p_bounded(s), dP = W.dp_bounded(s);
      EXPECT_GE(P, W.e3() - 1e-14);
      EXPECT_LE(P, W.e2() + 1e-14);
      EXPECT_NEAR(dP * dP, 4 * P * P * P - c.g2 * P - c.g3, 1e-10);
      const double h = 1e-5;
      EXPECT_NEAR((W.p_bounded(s + h) - W.p_bounded(s - h)) / (2 * h), dP, 1e-7);
    }
  }
}

TEST(Weierstrass, InversionRoundTrip) {
  for (const auto& c : kCases) {
    const Weierstrass W(c.g2, c.g3);
    const double top = std::isfinite(W.omega1()) ? W.omega1() : 2.0;
    for (double f : {0.05, 0.3, 0.8}) {
      const double t = f * top;
      EXPECT_NEAR(W.invert(W.p(t), Cycle::RealAxis), t, 1e-9 * std::max(1.0, t))
          << to_string(c.kind);
    }
    if (c.kind == RootKind::ThreeReal)
      for (double f : {0.05, 0.5, 0.95}) {
        const double s = f * W.omega1();
        EXPECT_NEAR(W.invert(W.p_bounded(s), Cycle::Bounded), s, 1e-9);
      }
  }
  EXPECT_NEAR(invert_weierstrass(weierstrass_p(0.4, 2, 3), 2, 3), 0.4, 1e-10);
}
