#include <gtest/gtest.h>

#include <cmath>

#include <gyrochap/hamiltonization.hpp>
#include <gyrochap/integrals.hpp>
#include <gyrochap/reduced_flow.hpp>

#include "support.hpp"

using namespace gyrochap;
using namespace gyrochap::testing;

TEST(Hamiltonization, MultiplierForScalarOperator) {
  RollingSpec s;
  s.n = 3;
  s.a = Vec::Constant(3, 2.0);
  s.epsilon = 1.0;
  s = validate_spec(s);
  EXPECT_NEAR(multiplier_N(s, Vec::Unit(3, 1)), std::pow(2.0, -0.5), 1e-15);
}

TEST(Hamiltonization, CalAEqualsQuadraticFormOnTheSphere) {
  Rng rng(31);
  const RollingSpec s = son2_spec(5, 1.7, 0.8, 2.0, 0.4);
  for (int k = 0; k < 20; ++k) {
    const Vec g = random_unit(5, rng);
    EXPECT_NEAR(cal_A(s, g), a_quad(s, g), 1e-14);
  }
}

TEST(Hamiltonization, DensityDeterminantAndClosedFormAgreeUpToConstant) {
  Rng rng(32);
  for (int k = 0; k < 12; ++k) {
    const int n = 3 + k % 4;
    const RollingSpec s = random_generic(n, std::vector<double>{-1, 0.5, 1, 2}[k % 4], rng);
    const double c = measure_density_det(s, Vec::Unit(n, 2)) / measure_density(s, Vec::Unit(n, 2));
    EXPECT_NEAR(measure_density(s, Vec::Unit(n, 2)), 1.0, 1e-15);
    for (int j = 0; j < 10; ++j) {
      const Vec g = random_unit(n, rng);
      EXPECT_NEAR(measure_density_det(s, g) / measure_density(s, g), c, 1e-10 * std::abs(c));
    }
  }
}

TEST(Hamiltonization, MeasureDivergenceVanishesOnlyForTheRightExponent) {
  Rng rng(33);
  for (int k = 0; k < 8; ++k) {
    const int n = 3 + k % 3;
    const RollingSpec s = random_generic(n, std::vector<double>{-1, 0.5, 1, 2}[k % 4], rng);
    const CheckResult ok = check_measure(s, 100 + k, 20);
    EXPECT_TRUE(ok.pass) << ok.residual;
    const CheckResult bad = check_measure(s, 100 + k, 20, 1e-6, 1.0, 2.0);
    EXPECT_GT(bad.residual, 1e-2);
  }
}

TEST(Hamiltonization, ThetaFormIsExactDifferentialOfLogDensity) {
  Rng rng(34);
  for (int k = 0; k < 6; ++k) {
    const RollingSpec s = random_generic(3 + k % 3, std::vector<double>{-1, 2, 1}[k % 3], rng);
    const CheckResult r = theta_form_check(s, 7 + k);
    EXPECT_TRUE(r.pass) << r.residual;
  }
}

TEST(Hamiltonization, PhiSimpleHoldsForSpecialOperators) {
  Rng rng(35);
  for (int k = 0; k < 6; ++k) {
    const RollingSpec s = random_generic(3 + k % 3, std::vector<double>{-1, 2, 1, 0.5}[k % 4], rng);
    const CheckResult r = check_phi_simple(s, 9 + k, 100);
    EXPECT_TRUE(r.pass) << r.detail;
  }
}

TEST(Hamiltonization, MagneticClosedness) {
  EXPECT_TRUE(check_magnetic_closedness(son2_spec(3, 1.5, 1.0, 2.0, 0.7), 1).pass);
  const CheckResult ok5 = check_magnetic_closedness(son2_spec(5, 1.5, 1.0, 2.0, 0.7), 2);
  EXPECT_TRUE(ok5.pass) << ok5.residual;

  RollingSpec bad;
  bad.n = 4;
  bad.a = (Vec(4) << 1.0, 1.3, 1.6, 0.9).finished();
  bad.epsilon = 2.0;
  bad.kappa = kappa12(4, 0.7);
  bad.kappa(2, 3) = 0.5;
  bad.kappa(3, 2) = -0.5;
  const CheckResult r = check_magnetic_closedness(validate_spec(bad), 3);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.residual, 1e-3);
}

TEST(Hamiltonization, ClosednessNeedsEqualTailOfA) {
  RollingSpec s = son2_spec(4, 1.5, 1.0, 2.0, 0.7);
  s.a(3) = 1.4;
  EXPECT_FALSE(check_magnetic_closedness(validate_spec(s), 4).pass);
}

TEST(Hamiltonization, EquivalenceOfReducedAndTwistedFlows) {
  Rng rng(36);
  for (double eps : {2.0, -1.0}) {
    const RollingSpec s = son2_spec(4, 1.6, 0.9, eps, 0.8);
    const Vec y0 = random_phase_point(4, rng);
    ode::Options o;
    o.rtol = 1e-11;
    o.atol = 1e-13;
    const auto rep = hamiltonization_equivalence(s, y0, 10.0, o);
    EXPECT_LT(rep.max_gamma_error, 1e-7) << "eps " << eps;
  }
}

TEST(Hamiltonization, TwistedIntegralIsConserved) {
  Rng rng(37);
  const RollingSpec s = son2_spec(3, 1.6, 0.9, 2.0, 0.8);
  Vec w0 = random_phase_point(3, rng);
  w0.tail(3) *= multiplier_N(s, w0.head(3));
  ode::Options o;
  o.rtol = 1e-11;
  o.atol = 1e-13;
  o.sample_dt = 0.1;
  o.project = [](Vec& y) { project_state(y, 3); };
  const auto tr = ode::integrate([&](double, const Vec& w, Vec& dw) { dw = twisted_rhs(s, w); },
                                 0.0, w0, 30.0, o);
  const double f0 = phi12_twisted(s, w0);
  double worst = 0;
  for (const auto& w : tr.y) worst = std::max(worst, std::abs(phi12_twisted(s, w) - f0));
  EXPECT_LT(worst, 1e-9);
}
