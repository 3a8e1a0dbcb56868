#include "gyrochap/so_n.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace gyrochap {

Mat wedge(const Vec& a, const Vec& b) {
  return a * b.transpose() - b * a.transpose();
}

double lie_inner(const Mat& X, const Mat& Y) {
  return -0.5 * (X * Y).trace();
}

Mat commutator(const Mat& X, const Mat& Y) { return X * Y - Y * X; }

Mat so_exp(const Mat& X) {
  Mat E = X.exp();
  return E;
}

Mat project_to_gamma_plane(const Mat& X, const Vec& gamma) {
  return wedge(X * gamma, gamma);
}

Mat inertia_apply(const Vec& a, const Mat& X) {
  return a.asDiagonal() * X * a.asDiagonal();
}

bool is_skew(const Mat& X, double tol) {
  if (X.rows() != X.cols()) return false;
  double scale = std::max(1.0, max_abs(X));
  return max_abs(X + X.transpose()) <= tol * scale;
}

double max_abs(const Mat& X) {
  return X.size() == 0 ? 0.0 : X.cwiseAbs().maxCoeff();
}

Mat orthonormalize(const Mat& g) {
  // one Newton step of the polar iteration is enough near SO(n)
  const Mat I = Mat::Identity(g.rows(), g.cols());
  return 0.5 * g * (3.0 * I - g.transpose() * g);
}

}  // namespace gyrochap
