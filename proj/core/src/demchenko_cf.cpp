#include "gyrochap/demchenko_cf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gyrochap/integrals.hpp"
#include "gyrochap/reduced_flow.hpp"
#include "gyrochap/sampling.hpp"

namespace gyrochap::demchenko {

using std::numbers::pi;

namespace {

void require_dim(const DemchenkoSpec& s) {
  if (s.n != 3 && s.n != 4) throw domain_error("closed form is available for n = 3 and n = 4");
}

double kappa12(const DemchenkoSpec& s) { return s.kappa(0, 1); }
double kappa34(const DemchenkoSpec& s) { return s.n >= 4 ? s.kappa(2, 3) : 0.0; }

double integrate_gk(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-11, &err);
}

}  // namespace

Invariants invariants(const DemchenkoSpec& s, const Vec& y) {
  require_dim(s);
  Invariants inv;
  inv.h = s.epsilon * s.epsilon / (2 * s.tau) * y.tail(s.n).squaredNorm();
  inv.phi12 = phi_block(s, y, 0, 1);
  inv.phi34 = s.n == 4 ? phi_block(s, y, 2, 3) : 0.0;
  return inv;
}

double Cubic::scale() const {
  return std::max({std::abs(a0), std::abs(a1), std::abs(a2), std::abs(a3), 1e-300});
}

Cubic cubic(const DemchenkoSpec& s, const Invariants& inv) {
  require_dim(s);
  const double e2 = s.epsilon * s.epsilon, tau = s.tau, t2 = tau * tau, h = inv.h;
  const double k12 = kappa12(s);
  Cubic c;
  if (s.n == 3) {
    const double Phi = inv.phi12;
    const double al = k12 * k12 / t2;
    const double be = -4 * e2 * (2 * h * tau + k12 * Phi) / t2;
    const double ga = 4 * e2 * e2 * Phi * Phi / t2;
    c.a0 = al;
    c.a1 = be - al;
    c.a2 = ga - be;
    c.a3 = -ga;
    return c;
  }
  const double k34 = kappa34(s);
  const double P12 = inv.phi12, P34 = inv.phi34;
  const double C = 2 * e2 * P34 - k34;
  c.a0 = (k12 * k12 - k34 * k34) / t2;
  c.a1 = -8 * e2 * h / tau - 2 * k34 * C / t2 - k12 * k12 / t2 - 4 * e2 * k12 * P12 / t2;
  c.a2 = 8 * e2 * h / tau - C * C / t2 + 4 * e2 * k12 * P12 / t2 + 4 * e2 * e2 * P12 * P12 / t2;
  c.a3 = -4 * e2 * e2 * P12 * P12 / t2;
  return c;
}

const char* to_string(CaseTag t) {
  switch (t) {
    case CaseTag::TwoRootsInterior: return "A-two-roots-interior";
    case CaseTag::OneRootInterior: return "A-one-root-interior";
    case CaseTag::DoubleRootStationary: return "A-double-root-stationary";
    case CaseTag::RootSpansOne: return "B-root-spans-one";
    case CaseTag::NoMotion: return "no-motion";
  }
  return "unknown";
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::Elliptic: return "elliptic";
    case Branch::Quadratic: return "quadratic";
    case Branch::Stationary: return "stationary";
  }
  return "unknown";
}

RootAnalysis analyze_roots(const Cubic& c, double tol) {
  RootAnalysis ra;
  const double sc = c.scale();
  ra.quadratic = std::abs(c.a0) <= 1e-14 * sc;
  ra.roots = elliptic::real_cubic_roots(ra.quadratic ? 0.0 : c.a0, c.a1, c.a2, c.a3);

  // breakpoints of [0,1] where the sign of P can change
  std::vector<double> pts{0.0};
  for (double r : ra.roots)
    if (r > tol && r < 1 - tol) pts.push_back(r);
  pts.push_back(1.0);
  std::sort(pts.begin(), pts.end());
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double lo = pts[k], hi = pts[k + 1];
    if (hi - lo < 1e-7) continue;
    if (c(0.5 * (lo + hi)) > tol * sc) {
      ra.u_lo = lo;
      ra.u_hi = hi;
      const bool at_one = hi >= 1.0 - tol;
      const bool at_zero = lo <= tol;
      if (!at_one && !at_zero) {
        ra.tag = CaseTag::TwoRootsInterior;
      } else if (at_one && std::abs(c(1.0)) <= tol * sc &&
                 std::abs(c.derivative(1.0)) <= 1e-6 * sc) {
        ra.tag = CaseTag::OneRootInterior;
      } else {
        ra.tag = CaseTag::RootSpansOne;
      }
      return ra;
    }
  }
  // no open interval: look for a double root (local maximum touching zero)
  const auto crit = elliptic::real_cubic_roots(0.0, ra.quadratic ? 0.0 : 3 * c.a0, 2 * c.a1, c.a2);
  for (double x : crit) {
    if (x <= tol || x >= 1 - tol) continue;
    const double curv = 6 * c.a0 * x + 2 * c.a1;
    if (curv <= 0 && std::abs(c(x)) <= 1e3 * tol * sc) {
      ra.tag = CaseTag::DoubleRootStationary;
      ra.u_lo = ra.u_hi = x;
      return ra;
    }
  }
  ra.tag = CaseTag::NoMotion;
  return ra;
}

N3Conditions n3_conditions(const DemchenkoSpec& s, const Invariants& inv, double tol) {
  const double e2 = s.epsilon * s.epsilon, tau = s.tau, k = kappa12(s), Phi = inv.phi12;
  const double h = inv.h;
  const double c1 = h * tau + k * Phi;
  const double S = 2 * h * tau + k * Phi;
  const double c2 = k * k / (2 * e2) - S;
  const double c3 = k * k / (4 * e2) - (S - e2 * Phi * Phi);
  const double sc = std::max({1.0, std::abs(h * tau), std::abs(k * Phi), k * k / e2});
  N3Conditions out;
  out.discriminant_zero = std::abs(c1) <= tol * sc;
  out.boundary_zero = std::abs(c3) <= tol * sc;
  out.case_a = c1 > tol * sc && c2 > tol * sc && c3 > tol * sc;
  out.case_b = c3 < -tol * sc;
  return out;
}

Invariants2 weierstrass_invariants(const Cubic& c) {
  Invariants2 w;
  w.g2 = c.a1 * c.a1 / 12.0 - c.a0 * c.a2 / 4.0;
  const double tail = -c.a1 * c.a1 * c.a1 / 216.0 - c.a0 * c.a0 * c.a3 / 16.0;
  w.g3 = c.a0 * c.a1 * c.a2 / 48.0 + tail;
  w.g3_variant = c.a0 * c.a1 * c.a2 / 4.0 + tail;
  return w;
}

double z_of_u(const Cubic& c, double u) { return (c.a0 * u + c.a1 / 3.0) / 4.0; }
double u_of_z(const Cubic& c, double z) { return (4.0 * z - c.a1 / 3.0) / c.a0; }

Certification certify_invariants(const Cubic& c, std::uint64_t seed, int samples, double tol) {
  if (std::abs(c.a0) <= 1e-14 * c.scale())
    throw domain_error("certification needs a nonzero leading coefficient");
  const Invariants2 w = weierstrass_invariants(c);
  Rng rng(seed);
  const double zs = std::max({1.0, std::abs(z_of_u(c, 0.0)), std::abs(z_of_u(c, 1.0))});
  Certification out;
  for (int i = 0; i < samples; ++i) {
    const double z = uniform(rng, -2 * zs, 2 * zs);
    const double rhs = c.a0 * c.a0 / 16.0 * c(u_of_z(c, z));
    const double mag = std::abs(4 * z * z * z) + std::abs(w.g2 * z) + std::abs(w.g3) +
                       std::abs(rhs) + 1e-300;
    const double lhs = 4 * z * z * z - w.g2 * z - w.g3;
    const double lhs_v = 4 * z * z * z - w.g2 * z - w.g3_variant;
    out.residual = std::max(out.residual, std::abs(lhs - rhs) / mag);
    out.residual_variant = std::max(out.residual_variant, std::abs(lhs_v - rhs) / mag);
  }
  out.pass = out.residual <= tol;
  out.variant_pass = out.residual_variant <= tol;
  return out;
}

// ---------------------------------------------------------------------------

ClosedForm::ClosedForm(const DemchenkoSpec& spec, const Vec& y0) : s_(validate_spec(spec)) {
  require_dim(s_);
  const int n = s_.n;
  const double e2 = s_.epsilon * s_.epsilon;
  inv_ = demchenko::invariants(s_, y0);
  cubic_ = cubic(s_, inv_);
  roots_ = analyze_roots(cubic_);

  const Vec g = y0.head(n), gd = (e2 / s_.tau) * y0.tail(n);
  u0_ = g(0) * g(0) + g(1) * g(1);
  const double ud0 = 2 * (g(0) * gd(0) + g(1) * gd(1));
  phi1_0_ = std::atan2(g(1), g(0));
  phi3_0_ = n == 4 ? std::atan2(g(3), g(2)) : 0.0;
  if (n == 3) {
    sign_hi_ = std::abs(g(2)) > 1e-12 ? std::copysign(1.0, g(2)) : std::copysign(1.0, gd(2));
  }

  const double sc = cubic_.scale();
  const bool stationary = roots_.tag == CaseTag::DoubleRootStationary ||
                          (std::abs(ud0) <= 1e-9 && std::abs(cubic_.derivative(u0_)) <= 1e-9 * sc &&
                           roots_.tag != CaseTag::TwoRootsInterior &&
                           roots_.tag != CaseTag::RootSpansOne);
  if (roots_.tag == CaseTag::NoMotion && !stationary)
    throw domain_error("initial data admit no real motion");

  if (stationary) {
    branch_ = Branch::Stationary;
    period_ = std::numeric_limits<double>::infinity();
  } else if (roots_.quadratic) {
    branch_ = Branch::Quadratic;
    const double A = cubic_.a1, B = cubic_.a2, C = cubic_.a3;
    if (!(A < 0)) throw domain_error("quadratic branch needs a negative leading coefficient");
    mid_ = -B / (2 * A);
    amp_ = std::sqrt(std::max(0.0, mid_ * mid_ - C / A));
    w_ = std::sqrt(-A);
    th_ = std::atan2((u0_ - mid_) * w_, ud0);
    period_ = 2 * pi / w_;
    psi_period_ = 2 * pi;
    psi_hi_ = pi / 2;
    psi_lo_ = -pi / 2;
  } else {
    branch_ = Branch::Elliptic;
    const Invariants2 wi = weierstrass_invariants(cubic_);
    wp_.emplace(wi.g2, wi.g3, 1e-10);
    const auto& r = roots_.roots;
    if (r.size() == 3 && wp_->kind() == elliptic::RootKind::ThreeReal) {
      // z = (a0/4)u + a1/12 is affine, so the roots of P in u give e₁, e₂, e₃
      // without the cancellation that small a0 causes in z
      jacobi_form_ = true;
      u_start_ = cubic_.a0 > 0 ? r[0] : r[2];
      u_span_ = r[1] - u_start_;
      m_ = std::abs(u_span_) / (r[2] - r[0]);
      lam_ = 0.5 * std::sqrt(std::abs(cubic_.a0) * (r[2] - r[0]));
      const double x = std::clamp((u0_ - u_start_) / u_span_, 0.0, 1.0);
      s0_ = elliptic::ellint_F(std::asin(std::sqrt(x)), m_) / lam_;
      sigma_ = ud0 * u_span_ < 0 ? -1.0 : 1.0;
      period_ = 2 * elliptic::ellint_K(m_) / lam_;
    } else {
      const double z0 = z_of_u(cubic_, u0_);
      const double zlo = std::min(wp_->e3(), wp_->e2()), zhi = wp_->e2();
      s0_ = wp_->invert(std::clamp(z0, zlo, zhi), elliptic::Cycle::Bounded);
      const double zd = cubic_.a0 / 4.0 * ud0;
      sigma_ = zd < 0 ? -1.0 : 1.0;
      period_ = 2 * wp_->omega1();
    }
    psi_period_ = period_;
    // u is largest where z is largest when a0 > 0
    psi_hi_ = cubic_.a0 > 0 ? period_ / 2 : 0.0;
    psi_lo_ = cubic_.a0 > 0 ? 0.0 : period_ / 2;
  }
  touches_one_ = branch_ != Branch::Stationary && roots_.u_hi >= 1.0 - 1e-9;
  touches_zero_ = branch_ != Branch::Stationary && roots_.u_lo <= 1e-9;

  if (n == 3 && touches_one_ && jacobi_form_) {
    // 1 − u is (1 − u_start)cn² when a0 > 0 and (1 − r₂)sn² when a0 < 0
    smooth_hi_ = true;
    smooth_cn_ = cubic_.a0 > 0;
    smooth_amp_ = std::sqrt(std::abs(u_span_));
    const elliptic::Jacobi j = jac(0.0);
    const double v = smooth_cn_ ? j.cn : j.sn;
    const double dv = (smooth_cn_ ? -j.sn * j.dn : j.cn * j.dn) * sigma_;
    if (std::abs(v) > 1e-8)
      sign_hi_ = std::copysign(1.0, g(2)) * std::copysign(1.0, v);
    else
      sign_hi_ = std::copysign(1.0, gd(2)) * std::copysign(1.0, dv);
  }

  if (std::isfinite(period_)) {
    dphi1_ = phase_integral(period_, 1);
    if (n == 4) dphi3_ = phase_integral(period_, 3);
  }
}

double ClosedForm::cycle_phase(double t) const {
  return branch_ == Branch::Elliptic ? s0_ + sigma_ * t : w_ * t + th_;
}

elliptic::Jacobi ClosedForm::jac(double t) const {
  return elliptic::jacobi(lam_ * cycle_phase(t), m_);
}

double ClosedForm::u(double t) const {
  switch (branch_) {
    case Branch::Stationary: return u0_;
    case Branch::Quadratic: return mid_ + amp_ * std::sin(w_ * t + th_);
    case Branch::Elliptic:
      if (jacobi_form_) {
        const elliptic::Jacobi j = jac(t);
        return u_start_ + u_span_ * j.sn * j.sn;
      }
      return u_of_z(cubic_, wp_->p_bounded(s0_ + sigma_ * t));
  }
  return 0.0;
}

double ClosedForm::u_dot(double t) const {
  switch (branch_) {
    case Branch::Stationary: return 0.0;
    case Branch::Quadratic: return amp_ * w_ * std::cos(w_ * t + th_);
    case Branch::Elliptic:
      if (jacobi_form_) {
        const elliptic::Jacobi j = jac(t);
        return 2 * u_span_ * lam_ * sigma_ * j.sn * j.cn * j.dn;
      }
      return 4.0 / cubic_.a0 * sigma_ * wp_->dp_bounded(s0_ + sigma_ * t);
  }
  return 0.0;
}

double ClosedForm::phase_integral(double t, int which) const {
  const double e2 = s_.epsilon * s_.epsilon, tau = s_.tau;
  const double P = which == 1 ? inv_.phi12 : inv_.phi34;
  const double k = which == 1 ? kappa12(s_) : kappa34(s_);
  auto rate = [&](double uu) {
    const double r = which == 1 ? uu : 1.0 - uu;
    return (P == 0.0 ? 0.0 : e2 * P / (tau * r)) - k / (2 * tau);
  };
  if (branch_ == Branch::Stationary) return rate(u0_) * t;
  auto f = [&](double x) { return rate(u(x)); };
  if (!std::isfinite(period_) || std::abs(t) <= period_) return integrate_gk(f, 0.0, t);
  const double dphi = which == 1 ? dphi1_ : dphi3_;
  const double k_per = std::floor(t / period_);
  return k_per * dphi + integrate_gk(f, 0.0, t - k_per * period_);
}

double ClosedForm::phi1(double t) const { return phi1_0_ + phase_integral(t, 1); }
double ClosedForm::phi3(double t) const { return phi3_0_ + phase_integral(t, 3); }

int ClosedForm::crossings(double t, double at) const {
  // number of ψ* = at + kP strictly after ψ(0) and up to ψ(t)
  const double a = cycle_phase(0.0), b = cycle_phase(t);
  const double lo = std::min(a, b), hi = std::max(a, b);
  const double P = psi_period_;
  const double eps = 1e-12 * std::max(1.0, std::abs(P));
  auto count_le = [&](double x) { return std::floor((x - at) / P); };
  double c = count_le(hi) - count_le(lo);
  // ψ(0) sitting on a crossing point does not count as a crossing
  if (std::abs(std::remainder(a - at, P)) < eps && a == hi) c -= 1;
  return static_cast<int>(std::max(0.0, c));
}

Vec ClosedForm::state(double t) const {
  const int n = s_.n;
  const double e2 = s_.epsilon * s_.epsilon, tau = s_.tau;
  const double uu = std::clamp(u(t), 0.0, 1.0), ud = u_dot(t);
  double s_hi = sign_hi_, s_lo = sign_lo_;
  if (touches_one_ && (crossings(t, psi_hi_) % 2 == 1)) s_hi = -s_hi;
  if (touches_zero_ && (crossings(t, psi_lo_) % 2 == 1)) s_lo = -s_lo;

  const double P12 = inv_.phi12;
  const double r1 = std::sqrt(uu);
  const double f1 = phi1(t);
  const double w1 = (P12 == 0.0 ? 0.0 : e2 * P12 / (tau * uu)) - kappa12(s_) / (2 * tau);
  const double r1d = r1 > 1e-300 ? ud / (2 * r1) : 0.0;
  Vec g(n), gd(n);
  g(0) = s_lo * r1 * std::cos(f1);
  g(1) = s_lo * r1 * std::sin(f1);
  gd(0) = s_lo * (r1d * std::cos(f1) - r1 * w1 * std::sin(f1));
  gd(1) = s_lo * (r1d * std::sin(f1) + r1 * w1 * std::cos(f1));
  const double r3 = std::sqrt(1.0 - uu);
  if (n == 3 && smooth_hi_) {
    const elliptic::Jacobi j = jac(t);
    const double lam = lam_;
    g(2) = sign_hi_ * smooth_amp_ * (smooth_cn_ ? j.cn : j.sn);
    gd(2) = sign_hi_ * smooth_amp_ * lam * sigma_ * (smooth_cn_ ? -j.sn * j.dn : j.cn * j.dn);
  } else if (n == 3) {
    g(2) = s_hi * r3;
    if (r3 > 1e-2) {
      gd(2) = -s_hi * ud / (2 * r3);
    } else {
      const double speed2 = 2 * inv_.h * e2 / tau;
      const double mag = std::sqrt(std::max(0.0, speed2 - gd(0) * gd(0) - gd(1) * gd(1)));
      gd(2) = -s_hi * (ud < 0 ? -1.0 : 1.0) * mag;
    }
  } else {
    const double P34 = inv_.phi34;
    const double f3 = phi3(t);
    const double w3 =
        (P34 == 0.0 ? 0.0 : e2 * P34 / (tau * (1.0 - uu))) - kappa34(s_) / (2 * tau);
    const double r3d = r3 > 1e-300 ? -ud / (2 * r3) : 0.0;
    g(2) = s_hi * r3 * std::cos(f3);
    g(3) = s_hi * r3 * std::sin(f3);
    gd(2) = s_hi * (r3d * std::cos(f3) - r3 * w3 * std::sin(f3));
    gd(3) = s_hi * (r3d * std::sin(f3) + r3 * w3 * std::cos(f3));
  }
  return pack(g, (tau / e2) * gd);
}

ClosedForm closed_form_trajectory(const DemchenkoSpec& s, const Vec& y0) {
  return ClosedForm(s, y0);
}

Stationary stationary_solution(const DemchenkoSpec& s, const Invariants& inv, double u1) {
  const double e2 = s.epsilon * s.epsilon, tau = s.tau;
  const double k12 = kappa12(s), k34 = kappa34(s);
  Stationary st;
  st.u1 = u1;
  st.alpha1 = (2 * e2 * inv.phi12 - k12 * u1) / (2 * tau * u1);
  st.alpha3 = (2 * e2 * inv.phi34 - k34 * (1 - u1)) / (2 * tau * (1 - u1));
  st.constraint_residual =
      k12 * st.alpha1 - k34 * st.alpha3 + tau * (st.alpha1 * st.alpha1 - st.alpha3 * st.alpha3);
  return st;
}

Vec stationary_initial_state(const DemchenkoSpec& s, double u1, double alpha1, int branch) {
  if (s.n != 4) throw domain_error("stationary rotations are built for n = 4");
  const double tau = s.tau, e2 = s.epsilon * s.epsilon;
  const double k12 = kappa12(s), k34 = kappa34(s);
  const double disc = k34 * k34 + 4 * tau * (k12 * alpha1 + tau * alpha1 * alpha1);
  if (disc < 0) throw domain_error("no real rate alpha_3 for this alpha_1");
  const double alpha3 = (-k34 + (branch >= 0 ? 1.0 : -1.0) * std::sqrt(disc)) / (2 * tau);
  Vec g = Vec::Zero(4), gd = Vec::Zero(4);
  g(0) = std::sqrt(u1);
  g(2) = std::sqrt(1 - u1);
  gd(1) = std::sqrt(u1) * alpha1;
  gd(3) = std::sqrt(1 - u1) * alpha3;
  return pack(g, (tau / e2) * gd);
}

PhiWitness phi1_unboundedness_witness(const DemchenkoSpec& s, const Vec& y0, int periods,
                                      double tol) {
  const ClosedForm cf(s, y0);
  PhiWitness w;
  w.periods = periods;
  w.period = cf.period();
  if (!std::isfinite(w.period)) throw domain_error("motion is not periodic in u");
  w.increment_closed = cf.phi1_increment();

  const int per = 400;
  ode::Options o;
  o.rtol = 1e-12;
  o.atol = 1e-13;
  o.sample_dt = w.period / per;
  o.keep_dense = false;
  const int n = s.n;
  o.project = [n](Vec& y) { project_state(y, n); };
  const auto tr = ode::integrate([&](double, const Vec& y, Vec& dy) { dy = demchenko_rhs(s, y); },
                                 0.0, y0, periods * w.period, o);
  std::vector<double> phi(tr.size());
  double prev = std::atan2(tr.y[0](1), tr.y[0](0));
  phi[0] = prev;
  for (std::size_t k = 1; k < tr.size(); ++k) {
    const double a = std::atan2(tr.y[k](1), tr.y[k](0));
    phi[k] = phi[k - 1] + std::remainder(a - prev, 2 * pi);
    prev = a;
  }
  // least-squares line through φ(kT)
  std::vector<double> ks, vs;
  for (int k = 0; k <= periods; ++k) {
    const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(k) * per, tr.size() - 1);
    ks.push_back(k);
    vs.push_back(phi[idx]);
  }
  const double m = static_cast<double>(ks.size());
  double sk = 0, sv = 0, skk = 0, skv = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    sk += ks[i];
    sv += vs[i];
    skk += ks[i] * ks[i];
    skv += ks[i] * vs[i];
  }
  w.increment = (m * skv - sk * sv) / (m * skk - sk * sk);
  const double c0 = (sv - w.increment * sk) / m;
  for (std::size_t i = 0; i < ks.size(); ++i)
    w.fit_residual = std::max(w.fit_residual, std::abs(vs[i] - c0 - w.increment * ks[i]));
  w.pass = std::abs(w.increment) > tol && w.fit_residual <= tol &&
           std::abs(w.increment - w.increment_closed) <= tol;
  return w;
}

}  // namespace gyrochap::demchenko
