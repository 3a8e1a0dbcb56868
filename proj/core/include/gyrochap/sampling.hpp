#pragma once

#include <cstdint>
#include <random>

#include "gyrochap/so_n.hpp"

namespace gyrochap {

using Rng = std::mt19937_64;

Vec random_unit(int n, Rng& rng);

/// Random point of T*S^{n-1} packed as (γ, p), |γ| = 1, ⟨γ,p⟩ = 0.
Vec random_phase_point(int n, Rng& rng, double p_scale = 1.0);

/// Random tangent vector at γ.
Vec random_tangent(const Vec& gamma, Rng& rng);

double uniform(Rng& rng, double lo, double hi);

}  // namespace gyrochap
