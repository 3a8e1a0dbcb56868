#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gyrochap/elliptic.hpp"
#include "gyrochap/integrator.hpp"
#include "gyrochap/model.hpp"

namespace gyrochap::demchenko {

/// h and the rotational integrals Φ₁₂, Φ₃₄ (Φ₃₄ = 0 for n = 3).
struct Invariants {
  double h = 0.0;
  double phi12 = 0.0;
  double phi34 = 0.0;
};

Invariants invariants(const DemchenkoSpec& s, const Vec& y);

/// u̇² = a0 u³ + a1 u² + a2 u + a3 for u = γ₁² + γ₂².
struct Cubic {
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
  double operator()(double u) const { return ((a0 * u + a1) * u + a2) * u + a3; }
  double derivative(double u) const { return (3 * a0 * u + 2 * a1) * u + a2; }
  double scale() const;
};

/// For n = 3 the expanded (κ²/τ²)(u−1)(u² − …); for n = 4 the cubic in
/// (h, Φ₁₂, Φ₃₄).
Cubic cubic(const DemchenkoSpec& s, const Invariants& inv);

enum class CaseTag {
  TwoRootsInterior,      // u oscillates in [u₁, u₂] ⊂ (0, 1)
  OneRootInterior,       // u₁ < 1 with a double root at 1: asymptotic motion
  DoubleRootStationary,  // u ≡ u₁
  RootSpansOne,          // u oscillates in [u₁, 1] and crosses the boundary
  NoMotion,
};

const char* to_string(CaseTag t);

struct RootAnalysis {
  CaseTag tag = CaseTag::NoMotion;
  std::vector<double> roots;  // all real roots, ascending
  double u_lo = 0.0, u_hi = 0.0;
  bool quadratic = false;  // leading coefficient vanished
};

RootAnalysis analyze_roots(const Cubic& c, double tol = 1e-10);

/// Inequality form of the n = 3 classification.
struct N3Conditions {
  bool case_a = false;
  bool case_b = false;
  bool discriminant_zero = false;  // hτ + κΦ = 0
  bool boundary_zero = false;      // 2hτ + κΦ − ε²Φ² = κ²/4ε²
};

N3Conditions n3_conditions(const DemchenkoSpec& s, const Invariants& inv, double tol = 1e-10);

struct Invariants2 {
  double g2 = 0.0;
  double g3 = 0.0;          // a0a1a2/48 − a1³/216 − a0²a3/16
  double g3_variant = 0.0;  // a0a1a2/4  − a1³/216 − a0²a3/16
};

/// Invariants of 4z³ − g₂z − g₃ for u = (4/a0) z − a1/(3a0).
Invariants2 weierstrass_invariants(const Cubic& c);

double z_of_u(const Cubic& c, double u);
double u_of_z(const Cubic& c, double z);

struct Certification {
  double residual = 0.0;          // with g3
  double residual_variant = 0.0;  // with g3_variant
  bool pass = false;
  bool variant_pass = false;
};

/// Checks 4z³ − g₂z − g₃ = (a0²/16) P(u(z)) at random z (relative residual).
Certification certify_invariants(const Cubic& c, std::uint64_t seed, int samples = 100,
                                 double tol = 1e-12);

enum class Branch { Elliptic, Quadratic, Stationary };
const char* to_string(Branch b);

/// Closed-form solution of the isotropic flow for n = 3 and n = 4.
class ClosedForm {
 public:
  ClosedForm(const DemchenkoSpec& s, const Vec& y0);

  const Invariants& invariants() const { return inv_; }
  const Cubic& poly() const { return cubic_; }
  const RootAnalysis& analysis() const { return roots_; }
  Branch branch() const { return branch_; }
  /// Period of u(t) (infinite for stationary or asymptotic motion).
  double period() const { return period_; }
  const elliptic::Weierstrass* weierstrass() const { return wp_ ? &*wp_ : nullptr; }

  double u(double t) const;
  double u_dot(double t) const;
  /// Angles φ₁ (and φ₃ for n = 4), unwrapped.
  double phi1(double t) const;
  double phi3(double t) const;
  /// Mean rate of φ₁ over one period (increment / period).
  double phi1_increment() const { return dphi1_; }
  Vec state(double t) const;

 private:
  double cycle_phase(double t) const;
  double phase_integral(double t, int which) const;
  int crossings(double t, double at) const;

  DemchenkoSpec s_;
  Invariants inv_;
  Cubic cubic_;
  RootAnalysis roots_;
  Branch branch_;
  std::optional<elliptic::Weierstrass> wp_;
  double period_ = 0.0;
  double s0_ = 0.0, sigma_ = 1.0;                   // elliptic: ψ = s0 + σt
  double mid_ = 0.0, amp_ = 0.0, w_ = 0.0, th_ = 0.0;  // quadratic
  double u0_ = 0.0;
  double phi1_0_ = 0.0, phi3_0_ = 0.0;
  double dphi1_ = 0.0, dphi3_ = 0.0;  // increments over one period
  double sign_hi_ = 1.0, sign_lo_ = 1.0;
  bool touches_one_ = false, touches_zero_ = false;
  double psi_hi_ = 0.0, psi_lo_ = 0.0, psi_period_ = 0.0;
  // ℘(ψ+ω₃) = e₃ + (e₂−e₃)sn²(λψ|m) mapped back to u with the roots of P
  bool jacobi_form_ = false;
  double u_start_ = 0.0, u_span_ = 0.0, lam_ = 0.0, m_ = 0.0;
  elliptic::Jacobi jac(double t) const;
  // n = 3 with u reaching 1: γ₃ = c·√(4(e₂−e₃)/|a0|)·(cn or sn) without square roots
  bool smooth_hi_ = false, smooth_cn_ = false;
  double smooth_amp_ = 0.0;
};

ClosedForm closed_form_trajectory(const DemchenkoSpec& s, const Vec& y0);

/// Uniform rotation with u ≡ u₁ for n = 4.
struct Stationary {
  double u1 = 0.0, alpha1 = 0.0, alpha3 = 0.0;
  double constraint_residual = 0.0;  // κ₁₂α₁ − κ₃₄α₃ + τ(α₁² − α₃²)
};

Stationary stationary_solution(const DemchenkoSpec& s, const Invariants& inv, double u1);

/// Initial state of a uniform rotation with u ≡ u1 and rate α₁; α₃ is the
/// root of the constraint selected by `branch` (±1).
Vec stationary_initial_state(const DemchenkoSpec& s, double u1, double alpha1, int branch = 1);

struct PhiWitness {
  double period = 0.0;
  double increment = 0.0;         // from the numerical trajectory
  double increment_closed = 0.0;  // closed-form quadrature
  double fit_residual = 0.0;
  int periods = 0;
  bool pass = false;
};

/// φ₁ grows by a fixed nonzero amount per period of u; the numerical φ₁ at
/// t = kT is fitted by a straight line.
PhiWitness phi1_unboundedness_witness(const DemchenkoSpec& s, const Vec& y0, int periods = 10,
                                      double tol = 1e-6);

}  // namespace gyrochap::demchenko
