#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gyrochap/integrator.hpp"
#include "gyrochap/model.hpp"

namespace gyrochap {

enum class Family {
  Generic,
  SO2xSOn2,   // a₁ = a₂, a₃ = … = aₙ, κ = κ₁₂ e₁∧e₂
  Isotropic,  // 𝔸 ∝ Id, block-diagonal κ
};

const char* to_string(Family f);
Family classify(const RollingSpec& s, double tol = 1e-12);

using PhaseFunction = std::function<double(const Vec& y)>;

struct Integral {
  std::string name;
  PhaseFunction eval;
};

/// Conserved quantities of the reduced flow, evaluated on (γ, p).
/// Always contains h; adds the rotational integrals of the family.
std::vector<Integral> integral_suite(const RollingSpec& s);

/// Same suite for the isotropic spec (h and one Φ per κ block).
std::vector<Integral> integral_suite(const DemchenkoSpec& s);

/// Φ₁₂ = ε𝒜^{1/(2ε)−1}(γ₁p₂ − γ₂p₁) + κ₁₂/(a₁−a₃)·𝒜^{1/(2ε)}.
double phi12_son2(const RollingSpec& s, const Vec& y);
/// Same integral in the twisted chart (γ, p̃ = 𝒩p).
double phi12_twisted(const RollingSpec& s, const Vec& y_twisted);
/// ε𝒜^{1/(2ε)−1}(γᵢpⱼ − γⱼpᵢ), zero-based indices with 2 ≤ i < j.
double phi_ij_son2(const RollingSpec& s, const Vec& y, int i, int j);

/// γᵢpⱼ − γⱼpᵢ + (κᵢⱼ/2ε²)(γᵢ² + γⱼ²), zero-based indices.
double phi_block(const DemchenkoSpec& s, const Vec& y, int i, int j);

/// Dirac bracket of F and G for the constraints ⟨γ,γ⟩ = 1, ⟨p,γ⟩ = 0 with
/// the magnetic Poisson bracket {F,G} = Σ(F_γG_p − F_pG_γ) + Σ Mᵢⱼ F_pᵢ G_pⱼ.
/// Gradients are central differences in ℝ²ⁿ.
double dirac_bracket(const PhaseFunction& F, const PhaseFunction& G, const Mat& M,
                     const Vec& y);

struct DriftEntry {
  std::string name;
  double initial = 0.0;
  double max_abs = 0.0;
  double max_rel = 0.0;  // |F − F₀| / max(1, |F₀|)
  double worst_time = 0.0;
};

std::vector<DriftEntry> drift_report(const std::vector<Integral>& suite,
                                     const ode::Trajectory& tr);

}  // namespace gyrochap
