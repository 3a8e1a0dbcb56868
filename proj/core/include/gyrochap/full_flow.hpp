#pragma once

#include <vector>

#include "gyrochap/integrator.hpp"
#include "gyrochap/model.hpp"

namespace gyrochap {

struct FullSample {
  double t = 0.0;
  Mat g;      // attitude in SO(n)
  Vec r;      // centre of the ball
  Mat omega;  // body angular velocity
  Vec gamma;  // reduced state, γ = g⁻¹r / (b ± a_b)
};

struct FullTrajectory {
  std::vector<FullSample> samples;
  double radius = 1.0;
};

struct Lift {
  Mat omega;
  Vec r_dot;
};

/// ω = (1/ε) γ ∧ γ̇ and ṙ = (b ± a_b)(1 − 1/ε) g γ̇.
Lift horizontal_lift_velocity(const RollingSpec& s, const Mat& g, const Vec& gamma,
                              const Vec& gamma_dot);

/// γ = g⁻¹ r / (b ± a_b)
Vec contact_direction(const RollingSpec& s, const Mat& g, const Vec& r);

/// Integrates ġ = gω along a sampled reduced trajectory (uniform grid,
/// dense output required) with a fourth-order Magnus step on `substeps`
/// sub-intervals of each sample interval. r = (b ± a_b) g γ.
FullTrajectory reconstruct_full(const RollingSpec& s, const ode::Trajectory& reduced,
                                const Mat& g0, int substeps = 4);

struct FullResiduals {
  double orthogonality = 0.0;  // max ‖gᵀg − Id‖
  double no_twist = 0.0;       // max ‖ω − P_γ ω‖
  double rolling = 0.0;        // max ‖ṙ − (1−ε) g ω gᵀ r‖, ṙ by finite differences
  double admissible = 0.0;     // max ‖P_γ(𝐈ω̇ − [𝐈ω,ω] − [κ,ω])‖
  double admissible_coarse = 0.0;  // same with a doubled stencil
  double multiplier = 0.0;     // max ‖(1 − P_γ)(…)‖, the reaction term
  double contact = 0.0;        // max ‖γ − g⁻¹r/(b±a_b)‖
};

/// Residuals of the unreduced equations along a full trajectory; time
/// derivatives use five-point central differences on the sample grid.
FullResiduals full_residuals(const RollingSpec& s, const FullTrajectory& tr);

}  // namespace gyrochap
