#include <gtest/gtest.h>

#include <cmath>

#include <gyrochap/demchenko_cf.hpp>
#include <gyrochap/reduced_flow.hpp>

#include "support.hpp"

using namespace gyrochap;
using namespace gyrochap::demchenko;
using namespace gyrochap::testing;

namespace {

ode::Trajectory run(const DemchenkoSpec& d, const Vec& y0, double T, double dt) {
  ode::Options o;
  o.rtol = 1e-12;
  o.atol = 1e-13;
  o.sample_dt = dt;
  o.keep_dense = false;
  const int n = d.n;
  o.project = [n](Vec& y) { project_state(y, n); };
  return ode::integrate([&](double, const Vec& y, Vec& dy) { dy = demchenko_rhs(d, y); }, 0.0,
                        y0, T, o);
}

double u_of(const Vec& y) { return y(0) * y(0) + y(1) * y(1); }

}  // namespace

TEST(Demchenko, CubicMatchesTheVectorField) {
  Rng rng(61);
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + k % 2;
    const DemchenkoSpec d = demchenko_spec(n, uniform(rng, 0.5, 2), k % 3 ? 2.0 : -1.0,
                                           uniform(rng, -2, 2), uniform(rng, -2, 2));
    const Vec y = random_phase_point(n, rng);
    const Vec dy = demchenko_rhs(d, y);
    const double ud = 2 * (y(0) * dy(0) + y(1) * dy(1));
    const Cubic c = cubic(d, invariants(d, y));
    EXPECT_NEAR(c(u_of(y)), ud * ud, 1e-10 * std::max(1.0, c.scale()));
  }
}

TEST(Demchenko, ValueAtTheBoundary) {
  Rng rng(62);
  for (int k = 0; k < 20; ++k) {
    const DemchenkoSpec d = demchenko_spec(4, 1.4, 2.0, 0.7, -0.9);
    const Invariants inv = invariants(d, random_phase_point(4, rng));
    const double e4 = std::pow(d.epsilon, 4);
    EXPECT_NEAR(cubic(d, inv)(1.0), -4 * e4 * inv.phi34 * inv.phi34 / (d.tau * d.tau), 1e-10);
    const DemchenkoSpec d3 = demchenko_spec(3, 1.4, 2.0, 0.7);
    EXPECT_NEAR(cubic(d3, invariants(d3, random_phase_point(3, rng)))(1.0), 0.0, 1e-12);
  }
}

TEST(Demchenko, ThreeDimensionalCubicIsTheFourDimensionalOneWithoutSecondBlock) {
  Rng rng(63);
  const DemchenkoSpec d3 = demchenko_spec(3, 1.1, 2.0, 0.7);
  const DemchenkoSpec d4 = demchenko_spec(4, 1.1, 2.0, 0.7, 0.0);
  for (int k = 0; k < 10; ++k) {
    Invariants inv = invariants(d3, random_phase_point(3, rng));
    inv.phi34 = 0;
    const Cubic a = cubic(d3, inv), b = cubic(d4, inv);
    EXPECT_NEAR(a.a0, b.a0, 1e-13 * a.scale());
    EXPECT_NEAR(a.a1, b.a1, 1e-13 * a.scale());
    EXPECT_NEAR(a.a2, b.a2, 1e-13 * a.scale());
    EXPECT_NEAR(a.a3, b.a3, 1e-13 * a.scale());
  }
}

TEST(Demchenko, WeierstrassInvariantsCertification) {
  Rng rng(64);
  int variant_failures = 0;
  for (int k = 0; k < 50; ++k) {
    const DemchenkoSpec d = demchenko_spec(4, uniform(rng, 0.5, 2), 2.0, uniform(rng, 0.5, 2),
                                           uniform(rng, -0.4, 0.4));
    const Cubic c = cubic(d, invariants(d, random_phase_point(4, rng)));
    const Certification r = certify_invariants(c, 100 + k);
    EXPECT_TRUE(r.pass) << r.residual;
    if (!r.variant_pass) ++variant_failures;
  }
  EXPECT_EQ(variant_failures, 50);
}

TEST(Demchenko, RootAnalysisBracketsTheMotion) {
  Rng rng(65);
  for (int k = 0; k < 30; ++k) {
    const int n = 3 + k % 2;
    const DemchenkoSpec d = demchenko_spec(n, 1.2, 2.0, uniform(rng, -2, 2), uniform(rng, -2, 2));
    const Vec y0 = random_phase_point(n, rng);
    const RootAnalysis ra = analyze_roots(cubic(d, invariants(d, y0)));
    if (ra.tag == CaseTag::NoMotion) continue;
    const auto tr = run(d, y0, 20.0, 0.01);
    for (const auto& y : tr.y) {
      EXPECT_GE(u_of(y), ra.u_lo - 1e-7);
      EXPECT_LE(u_of(y), ra.u_hi + 1e-7);
    }
  }
}

TEST(Demchenko, ThreeDimensionalInequalitiesPredictEquatorCrossing) {
  Rng rng(66);
  int seen_a = 0, seen_b = 0;
  for (int k = 0; k < 40; ++k) {
    const DemchenkoSpec d = demchenko_spec(3, uniform(rng, 0.5, 2), 2.0, uniform(rng, -3, 3));
    const Vec y0 = random_phase_point(3, rng, uniform(rng, 0.2, 2));
    const N3Conditions c = n3_conditions(d, invariants(d, y0));
    if (c.boundary_zero || c.discriminant_zero) continue;
    const auto tr = run(d, y0, 60.0, 0.005);
    double umax = 0;
    for (const auto& y : tr.y) umax = std::max(umax, u_of(y));
    if (c.case_b) {
      ++seen_b;
      EXPECT_GT(umax, 1 - 1e-4);
    } else {
      ++seen_a;
      EXPECT_LT(umax, 1 - 1e-4);
    }
  }
  EXPECT_GT(seen_a, 0);
  EXPECT_GT(seen_b, 0);
}

TEST(Demchenko, ClosedFormMatchesIntegration) {
  Rng rng(67);
  int checked = 0;
  for (int k = 0; k < 12; ++k) {
    const int n = 3 + k % 2;
    const DemchenkoSpec d = demchenko_spec(n, uniform(rng, 0.6, 1.6), k % 3 ? 2.0 : -1.0,
                                           uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5));
    const Vec y0 = random_phase_point(n, rng);
    const ClosedForm cf(d, y0);
    if (cf.branch() == Branch::Stationary) continue;
    ++checked;
    const double T = std::isfinite(cf.period()) ? std::min(3 * cf.period(), 40.0) : 10.0;
    const auto tr = run(d, y0, T, T / 300);
    for (std::size_t i = 0; i < tr.size(); ++i) {
      EXPECT_NEAR(cf.u(tr.t[i]), u_of(tr.y[i]), 1e-7) << "n " << n << " t " << tr.t[i];
      EXPECT_LT((cf.state(tr.t[i]).head(n) - tr.y[i].head(n)).norm(), 1e-6)
          << "n " << n << " t " << tr.t[i] << " " << to_string(cf.analysis().tag);
    }
  }
  EXPECT_GT(checked, 8);
}

TEST(Demchenko, QuadraticBranchWhenLeadingCoefficientVanishes) {
  Rng rng(68);
  const DemchenkoSpec d = demchenko_spec(4, 1.3, 2.0, 0.8, 0.8);
  const Vec y0 = random_phase_point(4, rng);
  const ClosedForm cf(d, y0);
  EXPECT_EQ(cf.branch(), Branch::Quadratic);
  const auto tr = run(d, y0, 10.0, 0.05);
  for (std::size_t i = 0; i < tr.size(); ++i)
    EXPECT_LT((cf.state(tr.t[i]) - tr.y[i]).head(4).norm(), 1e-6);
}

TEST(Demchenko, StationaryRotation) {
  const DemchenkoSpec d = demchenko_spec(4, 1.3, 2.0, 0.6, -0.4);
  for (int branch : {1, -1}) {
    const Vec y0 = stationary_initial_state(d, 0.35, 0.9, branch);
    const Invariants inv = invariants(d, y0);
    const Stationary st = stationary_solution(d, inv, 0.35);
    EXPECT_NEAR(st.alpha1, 0.9, 1e-12);
    EXPECT_NEAR(st.constraint_residual, 0.0, 1e-12);
    const Cubic c = cubic(d, inv);
    EXPECT_NEAR(c(0.35), 0.0, 1e-12);
    EXPECT_NEAR(c.derivative(0.35), 0.0, 1e-11);
    const auto tr = run(d, y0, 20.0, 0.1);
    for (const auto& y : tr.y) EXPECT_NEAR(u_of(y), 0.35, 1e-9);
    EXPECT_EQ(ClosedForm(d, y0).branch(), Branch::Stationary);
  }
}

TEST(Demchenko, AngleGrowsLinearlyOverPeriods) {
  Rng rng(69);
  const DemchenkoSpec d = demchenko_spec(4, 1.2, 2.0, 1.1, 0.3);
  const PhiWitness w = phi1_unboundedness_witness(d, random_phase_point(4, rng), 8);
  EXPECT_TRUE(w.pass) << w.increment << " " << w.increment_closed << " " << w.fit_residual;
  EXPECT_GT(std::abs(w.increment), 1e-3);
}
