#pragma once

#include <optional>

#include "gyrochap/errors.hpp"
#include "gyrochap/so_n.hpp"

namespace gyrochap {

/// Radii of the rolling ball (a_b) and the fixed sphere (b). sign = +1 when
/// the ball rolls over the outside of the sphere, -1 otherwise.
struct Radii {
  double ball = 1.0;
  double sphere = 1.0;
  int sign = 1;
};

/// Ball with inertia operator 𝕀(X) = 𝔸X𝔸 − D·X, gyroscope κ, and
/// ε = b/(b ± a_b).
struct RollingSpec {
  int n = 3;
  Vec a;
  double D = 0.0;
  double epsilon = 1.0;
  Mat kappa;
  std::optional<Radii> radii;
};

/// Isotropic ball (𝔸 = √τ·Id) with block-diagonal gyroscope.
struct DemchenkoSpec {
  int n = 3;
  double tau = 1.0;
  double epsilon = 1.0;
  Mat kappa;
};

/// Checks and returns the spec, throws spec_error with a typed code.
RollingSpec validate_spec(const RollingSpec& raw);
DemchenkoSpec validate_spec(const DemchenkoSpec& raw);

RollingSpec as_rolling(const DemchenkoSpec& s);

/// b ± a_b when radii are given, 1 otherwise (only ε enters the reduced
/// dynamics; the radius only scales r).
double contact_radius(const RollingSpec& s);

/// ⟨𝔸γ,γ⟩
double a_quad(const RollingSpec& s, const Vec& gamma);

/// Orthonormal basis of γ^⊥ as columns (n × n-1).
Mat tangent_basis(const Vec& gamma);

/// Kinetic metric on T S^{n-1}.
double metric_eval(const RollingSpec& s, const Vec& gamma, const Vec& X, const Vec& Y);

/// p = −(1/ε²) 𝐈(γ∧γ̇) γ
Vec legendre(const RollingSpec& s, const Vec& gamma, const Vec& gamma_dot);

/// γ̇ = (ε²/⟨𝔸γ,γ⟩)(𝔸⁻¹p − ⟨γ,𝔸⁻¹p⟩γ)
Vec legendre_inverse(const RollingSpec& s, const Vec& gamma, const Vec& p);

/// h = (ε²/2) ⟨p,𝔸⁻¹p⟩ / ⟨γ,𝔸γ⟩
double hamiltonian(const RollingSpec& s, const Vec& gamma, const Vec& p);

/// Σ(X,Y,Z) = ((2ε−1)/ε³) ⟨𝐈(γ∧X)Y, Z⟩
double sigma_tensor(const RollingSpec& s, const Vec& gamma, const Vec& X, const Vec& Y,
                    const Vec& Z);

/// The tangent vector C(Y,Z) with g(X, C(Y,Z)) = Σ(X,Y,Z) for all tangent X,
/// obtained by solving the Gram system in an orthonormal tangent basis.
Vec gyro_tensor_C(const RollingSpec& s, const Vec& gamma, const Vec& Y, const Vec& Z);

/// Covector δγ ↦ ((2ε−1)/ε³)⟨𝐈(γ∧X)X, δγ⟩ with X = γ̇(γ,p), returned as its
/// tangential representative.
Vec jk_force(const RollingSpec& s, const Vec& gamma, const Vec& p);

/// Dense copy of the gyroscopic matrix sized n × n (zero if none was given).
Mat kappa_or_zero(const RollingSpec& s);

}  // namespace gyrochap
