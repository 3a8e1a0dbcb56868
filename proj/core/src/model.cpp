#include "gyrochap/model.hpp"

#include <cmath>
#include <sstream>

namespace gyrochap {

const char* to_string(SpecErrorCode c) {
  switch (c) {
    case SpecErrorCode::NonPositiveInertia: return "NonPositiveInertia";
    case SpecErrorCode::IndefiniteOperator: return "IndefiniteOperator";
    case SpecErrorCode::ZeroEpsilon: return "ZeroEpsilon";
    case SpecErrorCode::NonSkewKappa: return "NonSkewKappa";
    case SpecErrorCode::InconsistentRadii: return "InconsistentRadii";
    case SpecErrorCode::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

namespace {

void check_kappa(int n, const Mat& kappa) {
  if (kappa.size() == 0) return;
  if (kappa.rows() != n || kappa.cols() != n)
    throw spec_error(SpecErrorCode::DimensionMismatch, "kappa must be n x n");
  if (!kappa.allFinite() || !is_skew(kappa, 1e-12))
    throw spec_error(SpecErrorCode::NonSkewKappa, "kappa is not skew-symmetric");
}

void check_epsilon(double eps) {
  if (!std::isfinite(eps) || eps == 0.0)
    throw spec_error(SpecErrorCode::ZeroEpsilon, "epsilon must be finite and nonzero");
}

}  // namespace

RollingSpec validate_spec(const RollingSpec& raw) {
  RollingSpec s = raw;
  if (s.n < 3) throw spec_error(SpecErrorCode::DimensionMismatch, "n must be at least 3");
  if (s.a.size() != s.n)
    throw spec_error(SpecErrorCode::DimensionMismatch, "a must have n entries");
  for (int i = 0; i < s.n; ++i)
    if (!(s.a(i) > 0.0) || !std::isfinite(s.a(i)))
      throw spec_error(SpecErrorCode::NonPositiveInertia, "a_i must be positive");
  if (!std::isfinite(s.D))
    throw spec_error(SpecErrorCode::IndefiniteOperator, "D must be finite");
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j)
      if (!(s.a(i) * s.a(j) > s.D)) {
        std::ostringstream os;
        os << "a_" << i + 1 << " a_" << j + 1 << " <= D";
        throw spec_error(SpecErrorCode::IndefiniteOperator, os.str());
      }
  check_epsilon(s.epsilon);
  check_kappa(s.n, s.kappa);
  if (s.kappa.size() == 0) s.kappa = Mat::Zero(s.n, s.n);
  s.kappa = 0.5 * (s.kappa - s.kappa.transpose());

  if (s.radii) {
    const Radii& r = *s.radii;
    if (!(r.ball > 0.0) || !(r.sphere > 0.0) || (r.sign != 1 && r.sign != -1))
      throw spec_error(SpecErrorCode::InconsistentRadii, "radii must be positive, sign +-1");
    double denom = r.sphere + r.sign * r.ball;
    if (denom == 0.0)
      throw spec_error(SpecErrorCode::InconsistentRadii, "b - a_b vanishes");
    double eps = r.sphere / denom;
    if (std::abs(eps - s.epsilon) > 1e-12 * std::max(1.0, std::abs(eps))) {
      std::ostringstream os;
      os << "epsilon " << s.epsilon << " differs from b/(b+-a_b) = " << eps;
      throw spec_error(SpecErrorCode::InconsistentRadii, os.str());
    }
  }
  return s;
}

DemchenkoSpec validate_spec(const DemchenkoSpec& raw) {
  DemchenkoSpec s = raw;
  if (s.n < 3) throw spec_error(SpecErrorCode::DimensionMismatch, "n must be at least 3");
  if (!(s.tau > 0.0) || !std::isfinite(s.tau))
    throw spec_error(SpecErrorCode::NonPositiveInertia, "tau must be positive");
  check_epsilon(s.epsilon);
  check_kappa(s.n, s.kappa);
  if (s.kappa.size() == 0) s.kappa = Mat::Zero(s.n, s.n);
  return s;
}

RollingSpec as_rolling(const DemchenkoSpec& d) {
  RollingSpec s;
  s.n = d.n;
  s.a = Vec::Constant(d.n, std::sqrt(d.tau));
  s.D = 0.0;
  s.epsilon = d.epsilon;
  s.kappa = d.kappa.size() ? d.kappa : Mat::Zero(d.n, d.n);
  return s;
}

double contact_radius(const RollingSpec& s) {
  if (!s.radii) return 1.0;
  return s.radii->sphere + s.radii->sign * s.radii->ball;
}

double a_quad(const RollingSpec& s, const Vec& gamma) {
  return gamma.dot(s.a.cwiseProduct(gamma));
}

Mat kappa_or_zero(const RollingSpec& s) {
  return s.kappa.size() ? s.kappa : Mat::Zero(s.n, s.n);
}

Mat tangent_basis(const Vec& gamma) {
  const int n = static_cast<int>(gamma.size());
  const Vec g = gamma.normalized();
  int drop = 0;
  g.cwiseAbs().maxCoeff(&drop);
  Mat E(n, n - 1);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    if (i == drop) continue;
    Vec v = Vec::Unit(n, i);
    for (int pass = 0; pass < 2; ++pass) {
      v -= v.dot(g) * g;
      for (int j = 0; j < col; ++j) v -= v.dot(E.col(j)) * E.col(j);
    }
    E.col(col++) = v.normalized();
  }
  return E;
}

double metric_eval(const RollingSpec& s, const Vec& gamma, const Vec& X, const Vec& Y) {
  const Vec Ag = s.a.cwiseProduct(gamma);
  const double e2 = s.epsilon * s.epsilon;
  return (s.a.cwiseProduct(X).dot(Y) * Ag.dot(gamma) - Ag.dot(X) * Ag.dot(Y)) / e2;
}

Vec legendre(const RollingSpec& s, const Vec& gamma, const Vec& gamma_dot) {
  const Mat k = inertia_apply(s.a, wedge(gamma, gamma_dot));
  return -(k * gamma) / (s.epsilon * s.epsilon);
}

Vec legendre_inverse(const RollingSpec& s, const Vec& gamma, const Vec& p) {
  const Vec ip = p.cwiseQuotient(s.a);
  const double c = gamma.dot(ip);
  return (s.epsilon * s.epsilon / a_quad(s, gamma)) * (ip - c * gamma);
}

double hamiltonian(const RollingSpec& s, const Vec& gamma, const Vec& p) {
  return 0.5 * s.epsilon * s.epsilon * p.dot(p.cwiseQuotient(s.a)) / a_quad(s, gamma);
}

double sigma_tensor(const RollingSpec& s, const Vec& gamma, const Vec& X, const Vec& Y,
                    const Vec& Z) {
  const double e = s.epsilon;
  const Mat k = inertia_apply(s.a, wedge(gamma, X));
  return (2.0 * e - 1.0) / (e * e * e) * (k * Y).dot(Z);
}

Vec gyro_tensor_C(const RollingSpec& s, const Vec& gamma, const Vec& Y, const Vec& Z) {
  const Mat E = tangent_basis(gamma);
  const int m = static_cast<int>(E.cols());
  Mat G(m, m);
  Vec b(m);
  for (int i = 0; i < m; ++i) {
    b(i) = sigma_tensor(s, gamma, E.col(i), Y, Z);
    for (int j = 0; j < m; ++j) G(i, j) = metric_eval(s, gamma, E.col(i), E.col(j));
  }
  const Vec c = G.ldlt().solve(b);
  return E * c;
}

Vec jk_force(const RollingSpec& s, const Vec& gamma, const Vec& p) {
  const Vec X = legendre_inverse(s, gamma, p);
  const double e = s.epsilon;
  Vec f = (2.0 * e - 1.0) / (e * e * e) * (inertia_apply(s.a, wedge(gamma, X)) * X);
  f -= f.dot(gamma) / gamma.squaredNorm() * gamma;
  return f;
}

}  // namespace gyrochap
