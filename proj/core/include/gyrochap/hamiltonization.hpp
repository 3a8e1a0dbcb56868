#pragma once

#include <cstdint>
#include <string>

#include "gyrochap/integrator.hpp"
#include "gyrochap/model.hpp"
#include "gyrochap/sampling.hpp"

namespace gyrochap {

/// True when a₃ = … = aₙ and the only nonzero entry of κ is κ₁₂.
bool is_son2_family(const RollingSpec& s, double tol = 1e-12);

/// 𝒜(γ) = a₃ + (a₁−a₃)γ₁² + (a₂−a₃)γ₂²; equals ⟨𝔸γ,γ⟩ on the sphere.
double cal_A(const RollingSpec& s, const Vec& gamma);
Vec cal_A_gradient(const RollingSpec& s, const Vec& gamma);

/// Chaplygin multiplier 𝒩 = ε⟨𝔸γ,γ⟩^{1/(2ε)−1}.
double multiplier_N(const RollingSpec& s, const Vec& gamma);
/// Directional derivative X(𝒩) at γ.
double multiplier_N_derivative(const RollingSpec& s, const Vec& gamma, const Vec& X);

/// Exponent k in ν ∝ ⟨𝔸γ,γ⟩^k, k = (n−2)/(2ε) + 2 − n.
double measure_exponent(const RollingSpec& s);

/// ν normalised so that ν(e₃) = 1.
double measure_density(const RollingSpec& s, const Vec& gamma);

/// (det 𝐈|_{ℝⁿ∧γ})^{1/(2ε)−1}, computed from the restricted operator.
double measure_density_det(const RollingSpec& s, const Vec& gamma);

/// div(ν X) of the reduced field in canonical chart coordinates around
/// the given phase point, ν ∝ ⟨𝔸γ,γ⟩^exponent.
double measure_divergence(const RollingSpec& s, const Vec& y, double exponent);

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// |tr C(X,·) − X(ln ν)| maximised over random tangent X at random γ.
CheckResult theta_form_check(const RollingSpec& s, std::uint64_t seed, int samples = 200);

/// C(X,Y) = 𝒩⁻¹X(𝒩)Y − 𝒩⁻¹Y(𝒩)X together with the weaker quadratic
/// identity contracted with momenta; residual is the worse of the two.
CheckResult check_phi_simple(const RollingSpec& s, std::uint64_t seed, int samples = 500,
                             double tol = 1e-9);

/// d(𝒩 f) = 0 for the reduced magnetic form f = (1/ε²)Σκᵢⱼ dγᵢ∧dγⱼ, by finite
/// differences in charts of the sphere.
CheckResult check_magnetic_closedness(const RollingSpec& s, std::uint64_t seed,
                                      int samples = 50, double tol = 1e-6);

/// Max |div(νX)| over random phase points.
CheckResult check_measure(const RollingSpec& s, std::uint64_t seed, int samples = 1000,
                          double tol = 1e-6, double exponent_shift = 0.0,
                          double p_scale = 1.0);

struct EquivalenceReport {
  double max_gamma_error = 0.0;
  double worst_time = 0.0;
  double tau_end = 0.0;
  int samples = 0;
};

/// Integrates the reduced flow in t and the twisted flow in τ = ∫𝒩 dt from
/// the same initial state and compares γ(t) with γ̃(τ(t)).
EquivalenceReport hamiltonization_equivalence(const RollingSpec& s, const Vec& y0,
                                              double t_end, const ode::Options& opt,
                                              double sample_dt = 0.05);

}  // namespace gyrochap
