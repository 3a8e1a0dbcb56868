#pragma once

#include "gyrochap/model.hpp"

namespace gyrochap {

/// Phase point (γ, p) packed as one vector of length 2n.
inline Vec pack(const Vec& gamma, const Vec& p) {
  Vec y(gamma.size() + p.size());
  y << gamma, p;
  return y;
}

/// Reduced vector field on T*S^{n-1} in the original time t.
Vec reduced_rhs(const RollingSpec& s, const Vec& y);

/// Multiplier μ in ṗ = … + μγ, fixed by d/dt⟨γ,p⟩ = 0.
double reduced_multiplier(const RollingSpec& s, const Vec& gamma, const Vec& p);

/// Isotropic flow: γ̇ = (ε²/τ)p, ṗ = (1/τ)κp + μγ.
Vec demchenko_rhs(const DemchenkoSpec& s, const Vec& y);

struct Multipliers {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// Multipliers of the constrained flow γ' = H_p − λ₂γ,
/// p' = −H_γ + 2λ₁γ + λ₂p + M γ' that keep ⟨γ,γ⟩ and ⟨p,γ⟩ constant.
Multipliers constrained_multipliers(const Vec& gamma, const Vec& p, const Vec& H_gamma,
                                    const Vec& H_p, const Mat& M);

/// Multipliers for the isotropic flow (H = (ε²/2τ)|p|², M = κ/ε²).
Multipliers dirac_multipliers(const DemchenkoSpec& s, const Vec& y);

/// Multipliers for the twisted system in (γ, p̃) (see twisted_rhs).
Multipliers dirac_multipliers(const RollingSpec& s, const Vec& y_twisted);

/// Flow of h*(γ,p̃) = ½𝒜^{1−1/ε}⟨p̃,𝔸⁻¹p̃⟩ with magnetic term
/// (κ₁₂/ε)𝒜^{1/(2ε)−1} e₁∧e₂, in the rescaled time dτ = 𝒩 dt.
/// Requires a₃ = … = aₙ and κ = κ₁₂ e₁∧e₂.
Vec twisted_rhs(const RollingSpec& s, const Vec& y_twisted);

/// γ ← γ/|γ|, p ← p − ⟨γ,p⟩γ on the first 2n entries of y.
void project_state(Vec& y, int n);

}  // namespace gyrochap
