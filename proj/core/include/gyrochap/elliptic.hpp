#pragma once

#include <vector>

namespace gyrochap::elliptic {

/// Carlson's symmetric integral R_F(x,y,z) = ½∫₀^∞ dt/√((t+x)(t+y)(t+z)),
/// by duplication. At most one argument may be zero.
double carlson_rf(double x, double y, double z);

/// Complete and incomplete integrals of the first kind, parameter m = k².
double ellint_K(double m);
double ellint_F(double phi, double m);

struct Jacobi {
  double sn, cn, dn;
};

/// Jacobi elliptic functions for 0 ≤ m ≤ 1 (descending Landen / AGM).
Jacobi jacobi(double u, double m);

/// Real roots of c3 x³ + c2 x² + c1 x + c0 (companion eigenvalues, Newton
/// polished), sorted ascending. Handles c3 = 0 as a quadratic.
std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0);

enum class RootKind {
  ThreeReal,    // Δ > 0, e₁ > e₂ > e₃
  OneReal,      // Δ < 0
  DoubleLower,  // e₂ = e₃ < e₁
  DoubleUpper,  // e₁ = e₂ > e₃
  Triple,       // g₂ = g₃ = 0
};

const char* to_string(RootKind k);

/// Which real cycle of ℘ is meant: the line ℝ (values ≥ e₁) or the line
/// ℝ + ω₃ (values in [e₃, e₂]).
enum class Cycle { RealAxis, Bounded };

/// Weierstrass ℘ with real invariants g₂, g₃: ℘'² = 4℘³ − g₂℘ − g₃.
class Weierstrass {
 public:
  Weierstrass(double g2, double g3, double degenerate_tol = 1e-12);

  double g2() const { return g2_; }
  double g3() const { return g3_; }
  double discriminant() const { return g2_ * g2_ * g2_ - 27.0 * g3_ * g3_; }
  RootKind kind() const { return kind_; }
  /// e₁ ≥ e₂ ≥ e₃ for real roots; for OneReal only e₂ is meaningful.
  double e1() const { return e1_; }
  double e2() const { return e2_; }
  double e3() const { return e3_; }

  /// Real half-period ω₁ (infinite for DoubleUpper and Triple).
  double omega1() const;

  double p(double t) const;
  double dp(double t) const;
  /// ℘(s + ω₃) for real s, the bounded real cycle (needs real roots).
  double p_bounded(double s) const;
  double dp_bounded(double s) const;
  /// Jacobi functions at λs with ℘(s + ω₃) = e₃ + (e₂−e₃)sn²; ThreeReal only.
  /// √(℘−e₃), √(e₂−℘), √(e₁−℘) on that cycle are the smooth signed multiples
  /// √(e₂−e₃)·sn, √(e₂−e₃)·cn, √(e₁−e₃)·dn.
  Jacobi bounded_jacobi(double s) const;
  double lambda() const { return lambda_; }

  /// Smallest s ≥ 0 with ℘(s) = z (RealAxis) or ℘(s + ω₃) = z (Bounded).
  double invert(double z, Cycle cycle) const;

 private:
  double g2_, g3_;
  RootKind kind_;
  double e1_ = 0, e2_ = 0, e3_ = 0;
  double lambda_ = 0, m_ = 0, H_ = 0, c_ = 0;
};

double weierstrass_p(double t, double g2, double g3);
double invert_weierstrass(double z, double g2, double g3, Cycle cycle = Cycle::RealAxis);

}  // namespace gyrochap::elliptic
