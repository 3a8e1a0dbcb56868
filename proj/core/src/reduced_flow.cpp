#include "gyrochap/reduced_flow.hpp"

#include <cmath>

#include "gyrochap/hamiltonization.hpp"

namespace gyrochap {

namespace {

struct Split {
  Vec gamma, p;
};

Split split(const Vec& y, int n) { return {y.head(n), y.segment(n, n)}; }

}  // namespace

double reduced_multiplier(const RollingSpec& s, const Vec& gamma, const Vec& p) {
  const double e = s.epsilon;
  const Vec X = legendre_inverse(s, gamma, p);
  const Vec F = (1.0 - e) / (e * e * e) * (inertia_apply(s.a, wedge(gamma, X)) * X) +
                kappa_or_zero(s) * X / (e * e);
  return -(X.dot(p) + gamma.dot(F)) / gamma.squaredNorm();
}

Vec reduced_rhs(const RollingSpec& s, const Vec& y) {
  const int n = s.n;
  auto [gamma, p] = split(y, n);
  const double e = s.epsilon;
  const Vec X = legendre_inverse(s, gamma, p);
  const Vec F = (1.0 - e) / (e * e * e) * (inertia_apply(s.a, wedge(gamma, X)) * X) +
                kappa_or_zero(s) * X / (e * e);
  const double mu = -(X.dot(p) + gamma.dot(F)) / gamma.squaredNorm();
  Vec dy(2 * n);
  dy.head(n) = X;
  dy.tail(n) = F + mu * gamma;
  return dy;
}

Vec demchenko_rhs(const DemchenkoSpec& s, const Vec& y) {
  const int n = s.n;
  auto [gamma, p] = split(y, n);
  const double e2 = s.epsilon * s.epsilon;
  const Vec kp = s.kappa * p;
  const double mu = (p.dot(s.kappa * gamma) - e2 * p.squaredNorm()) / (s.tau * gamma.squaredNorm());
  Vec dy(2 * n);
  dy.head(n) = (e2 / s.tau) * p;
  dy.tail(n) = kp / s.tau + mu * gamma;
  return dy;
}

Multipliers constrained_multipliers(const Vec& gamma, const Vec& p, const Vec& H_gamma,
                                    const Vec& H_p, const Mat& M) {
  // rows: d⟨γ,γ⟩/2 = 0 and d⟨p,γ⟩ = 0, unknowns (λ₁, λ₂)
  const double gg = gamma.squaredNorm();
  const double gp = gamma.dot(p);
  Eigen::Matrix2d A;
  Eigen::Vector2d b;
  A << 0.0, -gg,
       2.0 * gg, gp - gamma.dot(M * gamma) - gp;
  b << -gamma.dot(H_p),
       gamma.dot(H_gamma) - gamma.dot(M * H_p) - p.dot(H_p);
  const Eigen::Vector2d l = A.fullPivLu().solve(b);
  return {l(0), l(1)};
}

Multipliers dirac_multipliers(const DemchenkoSpec& s, const Vec& y) {
  const int n = s.n;
  auto [gamma, p] = split(y, n);
  const double e2 = s.epsilon * s.epsilon;
  return constrained_multipliers(gamma, p, Vec::Zero(n), (e2 / s.tau) * p, s.kappa / e2);
}

namespace {

struct TwistedParts {
  Vec H_gamma, H_p;
  Mat M;
};

TwistedParts twisted_parts(const RollingSpec& s, const Vec& gamma, const Vec& pt) {
  if (!is_son2_family(s, 1e-12))
    throw domain_error("twisted flow needs a_3 = ... = a_n and kappa = kappa_12 e1^e2");
  const int n = s.n;
  const double e = s.epsilon;
  const double A = cal_A(s, gamma);
  const Vec ip = pt.cwiseQuotient(s.a);
  TwistedParts t;
  t.H_p = std::pow(A, 1.0 - 1.0 / e) * ip;
  t.H_gamma = 0.5 * (1.0 - 1.0 / e) * std::pow(A, -1.0 / e) * pt.dot(ip) * cal_A_gradient(s, gamma);
  t.M = Mat::Zero(n, n);
  const double k12 = s.kappa(0, 1);
  const double c = k12 / e * std::pow(A, 1.0 / (2.0 * e) - 1.0);
  t.M(0, 1) = c;
  t.M(1, 0) = -c;
  return t;
}

}  // namespace

Multipliers dirac_multipliers(const RollingSpec& s, const Vec& y) {
  auto [gamma, pt] = split(y, s.n);
  const TwistedParts t = twisted_parts(s, gamma, pt);
  return constrained_multipliers(gamma, pt, t.H_gamma, t.H_p, t.M);
}

Vec twisted_rhs(const RollingSpec& s, const Vec& y) {
  const int n = s.n;
  auto [gamma, pt] = split(y, n);
  const TwistedParts t = twisted_parts(s, gamma, pt);
  const Multipliers l = constrained_multipliers(gamma, pt, t.H_gamma, t.H_p, t.M);
  Vec dy(2 * n);
  const Vec dg = t.H_p - l.lambda2 * gamma;
  dy.head(n) = dg;
  dy.tail(n) = -t.H_gamma + 2.0 * l.lambda1 * gamma + l.lambda2 * pt + t.M * dg;
  return dy;
}

void project_state(Vec& y, int n) {
  auto g = y.head(n);
  g /= g.norm();
  auto p = y.segment(n, n);
  p -= p.dot(g) * g;
}

}  // namespace gyrochap
