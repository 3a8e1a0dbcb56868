#include <gtest/gtest.h>

#include <cmath>

#include <gyrochap/model.hpp>

#include "support.hpp"

using namespace gyrochap;
using namespace gyrochap::testing;

namespace {

RollingSpec base(int n) {
  RollingSpec s;
  s.n = n;
  s.a = Vec::LinSpaced(n, 1.0, 2.0);
  s.D = 0.2;
  s.epsilon = 0.5;
  return s;
}

SpecErrorCode code_of(const RollingSpec& s) {
  try {
    validate_spec(s);
  } catch (const spec_error& e) {
    return e.code();
  }
  ADD_FAILURE() << "spec was accepted";
  return SpecErrorCode::DimensionMismatch;
}

}  // namespace

TEST(Validate, AcceptsAValidSpec) {
  RollingSpec s = base(4);
  s.kappa = kappa12(4, 0.3);
  EXPECT_NO_THROW(validate_spec(s));
}

TEST(Validate, RejectsNonPositiveInertia) {
  RollingSpec s = base(3);
  s.a(1) = 0.0;
  EXPECT_EQ(code_of(s), SpecErrorCode::NonPositiveInertia);
}

TEST(Validate, RejectsIndefiniteOperator) {
  RollingSpec s = base(3);
  s.D = 1.5;  // a₁a₂ = 1.5 is not larger than D
  EXPECT_EQ(code_of(s), SpecErrorCode::IndefiniteOperator);
}

TEST(Validate, RejectsZeroEpsilon) {
  RollingSpec s = base(3);
  s.epsilon = 0.0;
  EXPECT_EQ(code_of(s), SpecErrorCode::ZeroEpsilon);
}

TEST(Validate, RejectsNonSkewKappa) {
  RollingSpec s = base(3);
  s.kappa = Mat::Identity(3, 3);
  EXPECT_EQ(code_of(s), SpecErrorCode::NonSkewKappa);
}

TEST(Validate, RadiiMustReproduceEpsilon) {
  RollingSpec s = base(3);
  s.radii = Radii{1.0, 1.0, +1};  // b/(b + a) = 1/2
  EXPECT_NO_THROW(validate_spec(s));
  s.radii = Radii{1.0, 2.0, -1};  // b/(b − a) = 2
  EXPECT_EQ(code_of(s), SpecErrorCode::InconsistentRadii);
  s.epsilon = 2.0;
  EXPECT_NO_THROW(validate_spec(s));
  s.radii = Radii{2.0, 1.0, -1};  // ball around the sphere, ε = −1
  s.epsilon = -1.0;
  EXPECT_NO_THROW(validate_spec(s));
  EXPECT_NEAR(contact_radius(validate_spec(s)), -1.0, 1e-15);
}

TEST(Model, TangentBasisIsOrthonormal) {
  Rng rng(11);
  for (int k = 0; k < 40; ++k) {
    const int n = 3 + k % 4;
    const Vec g = random_unit(n, rng);
    const Mat E = tangent_basis(g);
    EXPECT_LT(max_abs(E.transpose() * E - Mat::Identity(n - 1, n - 1)), 1e-14);
    EXPECT_LT((E.transpose() * g).norm(), 1e-14);
  }
}

TEST(Model, MetricAtSouthPoleForUnitOperator) {
  RollingSpec s;
  s.n = 3;
  s.a = Vec::Ones(3);
  s.epsilon = 1.0;
  s = validate_spec(s);
  EXPECT_NEAR(metric_eval(s, Vec::Unit(3, 2), Vec::Unit(3, 0), Vec::Unit(3, 0)), 1.0, 1e-15);
}

TEST(Model, MetricFromOperatorForm) {
  // g(X,Y) = −(1/ε²)⟨𝐈(γ∧X)γ, Y⟩ evaluated with explicit matrices
  Rng rng(12);
  for (int k = 0; k < 40; ++k) {
    const int n = 3 + k % 3;
    const RollingSpec s = random_generic(n, 2.0, rng);
    const Vec g = random_unit(n, rng);
    const Vec X = random_tangent(g, rng), Y = random_tangent(g, rng);
    const Mat A = s.a.asDiagonal();
    const Mat W = g * X.transpose() - X * g.transpose();
    const double expect = -(A * W * A * g).dot(Y) / (s.epsilon * s.epsilon);
    EXPECT_NEAR(metric_eval(s, g, X, Y), expect, 1e-13);
    EXPECT_NEAR(metric_eval(s, g, X, Y), metric_eval(s, g, Y, X), 1e-13);
    EXPECT_GT(metric_eval(s, g, X, X), 0.0);
  }
}

TEST(Model, LegendreRoundTripAndEnergy) {
  Rng rng(13);
  for (int k = 0; k < 50; ++k) {
    const int n = 3 + k % 4;
    const double eps = std::vector<double>{-1, 0.5, 1, 2}[k % 4];
    const RollingSpec s = random_generic(n, eps, rng);
    const Vec g = random_unit(n, rng);
    const Vec v = random_tangent(g, rng);
    const Vec p = legendre(s, g, v);
    EXPECT_NEAR(p.dot(g), 0.0, 1e-13);
    EXPECT_LT((legendre_inverse(s, g, p) - v).norm(), 1e-12);
    const Vec Y = random_tangent(g, rng);
    EXPECT_NEAR(p.dot(Y), metric_eval(s, g, v, Y), 1e-12);
    EXPECT_NEAR(hamiltonian(s, g, p), 0.5 * metric_eval(s, g, v, v), 1e-12);
  }
}

TEST(Model, SigmaFromComponents) {
  Rng rng(14);
  for (int k = 0; k < 30; ++k) {
    const int n = 3 + k % 3;
    const RollingSpec s = random_generic(n, 2.0, rng);
    const Vec g = random_unit(n, rng);
    const Vec X = random_tangent(g, rng), Y = random_tangent(g, rng), Z = random_tangent(g, rng);
    // ⟨𝔸γ∧𝔸X · Y, Z⟩ = ⟨𝔸γ,Z⟩⟨𝔸X,Y⟩ − ⟨𝔸X,Z⟩⟨𝔸γ,Y⟩
    const Vec Ag = s.a.cwiseProduct(g), AX = s.a.cwiseProduct(X);
    const double e = s.epsilon;
    const double expect = (2 * e - 1) / (e * e * e) * (Ag.dot(Z) * AX.dot(Y) - AX.dot(Z) * Ag.dot(Y));
    EXPECT_NEAR(sigma_tensor(s, g, X, Y, Z), expect, 1e-13);
    EXPECT_NEAR(sigma_tensor(s, g, X, Y, Z), -sigma_tensor(s, g, X, Z, Y), 1e-13);
  }
}

TEST(Model, GyroTensorAgreesWithInverseLegendre) {
  // C(Y,Z) = g⁻¹ of the covector X ↦ Σ(X,Y,Z); the covector is written
  // out in ambient form and raised with legendre_inverse
  Rng rng(15);
  for (int k = 0; k < 30; ++k) {
    const int n = 3 + k % 4;
    const RollingSpec s = random_generic(n, std::vector<double>{-1, 2, 1}[k % 3], rng);
    const Vec g = random_unit(n, rng);
    const Vec Y = random_tangent(g, rng), Z = random_tangent(g, rng);
    const double e = s.epsilon;
    const Vec Ag = s.a.cwiseProduct(g);
    Vec w = (2 * e - 1) / (e * e * e) * s.a.cwiseProduct(Ag.dot(Z) * Y - Ag.dot(Y) * Z);
    w -= w.dot(g) * g;
    EXPECT_LT((gyro_tensor_C(s, g, Y, Z) - legendre_inverse(s, g, w)).norm(), 1e-11);
  }
}

TEST(Model, JkForceIsSigmaWithRepeatedVelocity) {
  Rng rng(16);
  for (int k = 0; k < 30; ++k) {
    const int n = 3 + k % 3;
    const RollingSpec s = random_generic(n, 2.0, rng);
    const Vec g = random_unit(n, rng);
    const Vec p = random_tangent(g, rng);
    const Vec X = legendre_inverse(s, g, p);
    const Vec d = random_tangent(g, rng);
    EXPECT_NEAR(jk_force(s, g, p).dot(d), sigma_tensor(s, g, X, X, d), 1e-12);
    EXPECT_NEAR(jk_force(s, g, p).dot(X), 0.0, 1e-12);
  }
}

TEST(Model, StructuralZeros) {
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + k % 4;
    const RollingSpec half = random_generic(n, 0.5, rng);
    const Vec g = random_unit(n, rng);
    const Vec X = random_tangent(g, rng), Y = random_tangent(g, rng), Z = random_tangent(g, rng);
    EXPECT_EQ(sigma_tensor(half, g, X, Y, Z), 0.0);
    EXPECT_LT(gyro_tensor_C(half, g, Y, Z).norm(), 1e-12);

    RollingSpec iso = random_generic(n, 2.0, rng);
    iso.a = Vec::Constant(n, 1.3);
    iso = validate_spec(iso);
    EXPECT_LT(std::abs(sigma_tensor(iso, g, X, Y, Z)), 1e-12);
    EXPECT_LT(jk_force(iso, g, random_tangent(g, rng)).norm(), 1e-12);
  }
}
