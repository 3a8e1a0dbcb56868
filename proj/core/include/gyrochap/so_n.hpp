#pragma once

#include <Eigen/Dense>

namespace gyrochap {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// a ∧ b = a bᵀ − b aᵀ, so (a ∧ b) c = a⟨b,c⟩ − b⟨a,c⟩.
Mat wedge(const Vec& a, const Vec& b);

/// Invariant scalar product on so(n): ⟨X,Y⟩ = −½ tr(XY).
double lie_inner(const Mat& X, const Mat& Y);

Mat commutator(const Mat& X, const Mat& Y);

/// Matrix exponential of a skew matrix (Padé with scaling and squaring).
Mat so_exp(const Mat& X);

/// Orthogonal projection of X onto the subspace γ ∧ ℝⁿ, X ↦ (Xγ) ∧ γ.
/// Assumes |γ| = 1.
Mat project_to_gamma_plane(const Mat& X, const Vec& gamma);

/// Inertia operator of special form, X ↦ 𝔸 X 𝔸 with 𝔸 = diag(a).
Mat inertia_apply(const Vec& a, const Mat& X);

bool is_skew(const Mat& X, double tol = 1e-12);

/// Largest |X_ij| over the matrix, zero for empty matrices.
double max_abs(const Mat& X);

/// Polar re-orthonormalisation of a nearly orthogonal matrix.
Mat orthonormalize(const Mat& g);

}  // namespace gyrochap
