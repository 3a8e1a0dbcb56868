#include "gyrochap/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "gyrochap/errors.hpp"

namespace gyrochap::elliptic {

using std::numbers::pi;

double carlson_rf(double x, double y, double z) {
  if (x < 0 || y < 0 || z < 0 || (x == 0) + (y == 0) + (z == 0) > 1)
    throw domain_error("carlson_rf: arguments must be nonnegative, at most one zero");
  for (int it = 0; it < 200; ++it) {
    const double mu = (x + y + z) / 3.0;
    const double dx = 1.0 - x / mu, dy = 1.0 - y / mu, dz = 1.0 - z / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 1e-3) {
      const double e2 = dx * dy - dz * dz;
      const double e3 = dx * dy * dz;
      return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) /
             std::sqrt(mu);
    }
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
  }
  throw domain_error("carlson_rf: no convergence");
}

double ellint_K(double m) {
  if (m >= 1.0) return std::numeric_limits<double>::infinity();
  return carlson_rf(0.0, 1.0 - m, 1.0);
}

double ellint_F(double phi, double m) {
  // reduce to |phi| ≤ π/2 using F(φ + jπ) = F(φ) + 2jK
  const double j = std::round(phi / pi);
  const double r = phi - j * pi;
  const double s = std::sin(r), c = std::cos(r);
  double F = s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
  if (j != 0.0) F += 2.0 * j * ellint_K(m);
  return F;
}

Jacobi jacobi(double u, double m) {
  if (m < 0.0 || m > 1.0) throw domain_error("jacobi: parameter outside [0,1]");
  if (m < 1e-16) return {std::sin(u), std::cos(u), 1.0};
  if (m > 1.0 - 1e-16) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  const double K = ellint_K(m);
  u = std::remainder(u, 4.0 * K);
  double a[32], c[32];
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int N = 0;
  while (std::abs(c[N]) > 1e-16 && N < 30) {
    a[N + 1] = 0.5 * (a[N] + b);
    c[N + 1] = 0.5 * (a[N] - b);
    b = std::sqrt(a[N] * b);
    ++N;
  }
  double phi = std::ldexp(a[N] * u, N);
  double phi_prev = phi;
  for (int k = N; k > 0; --k) {
    phi_prev = phi;
    phi = 0.5 * (phi + std::asin(c[k] * std::sin(phi) / a[k]));
  }
  const double sn = std::sin(phi), cn = std::cos(phi);
  const double dn = N > 0 ? cn / std::cos(phi_prev - phi) : std::sqrt(1.0 - m * sn * sn);
  return {sn, cn, dn};
}

std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0) {
  std::vector<double> roots;
  auto polish = [&](double x) {
    for (int it = 0; it < 8; ++it) {
      const double f = ((c3 * x + c2) * x + c1) * x + c0;
      const double df = (3 * c3 * x + 2 * c2) * x + c1;
      if (df == 0.0) break;
      const double dx = f / df;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    return x;
  };
  const double scale = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) return roots;
  if (std::abs(c3) <= 1e-14 * scale) {
    if (std::abs(c2) <= 1e-14 * scale) {
      if (c1 != 0.0) roots.push_back(-c0 / c1);
      return roots;
    }
    const double disc = c1 * c1 - 4 * c2 * c0;
    if (disc < 0) return roots;
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    roots.push_back(q / c2);
    if (q != 0.0) roots.push_back(c0 / q);
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  C(0, 0) = -c2 / c3;
  C(0, 1) = -c1 / c3;
  C(0, 2) = -c0 / c3;
  C(1, 0) = 1.0;
  C(2, 1) = 1.0;
  const Eigen::Vector3cd ev = C.eigenvalues();
  for (int i = 0; i < 3; ++i) {
    const double re = ev(i).real(), im = ev(i).imag();
    if (std::abs(im) <= 1e-7 * std::max(1.0, std::abs(re))) roots.push_back(polish(re));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

const char* to_string(RootKind k) {
  switch (k) {
    case RootKind::ThreeReal: return "three_real";
    case RootKind::OneReal: return "one_real";
    case RootKind::DoubleLower: return "double_lower";
    case RootKind::DoubleUpper: return "double_upper";
    case RootKind::Triple: return "triple";
  }
  return "unknown";
}

Weierstrass::Weierstrass(double g2, double g3, double tol) : g2_(g2), g3_(g3) {
  const double scale = std::abs(g2 * g2 * g2) + 27.0 * g3 * g3;
  const double delta = discriminant();
  if (scale == 0.0) {
    kind_ = RootKind::Triple;
    return;
  }
  if (std::abs(delta) <= tol * scale) {
    const double r = -1.5 * g3 / g2;
    c_ = std::abs(r);
    if (r > 0) {
      kind_ = RootKind::DoubleUpper;
      e1_ = e2_ = r;
      e3_ = -2 * r;
    } else {
      kind_ = RootKind::DoubleLower;
      e1_ = -2 * r;
      e2_ = e3_ = r;
    }
    return;
  }
  auto polish = [&](double z) {
    for (int it = 0; it < 6; ++it) {
      const double f = 4 * z * z * z - g2 * z - g3, df = 12 * z * z - g2;
      if (df == 0.0) break;
      z -= f / df;
    }
    return z;
  };
  if (delta > 0) {
    kind_ = RootKind::ThreeReal;
    const double r = std::sqrt(g2 / 12.0);
    const double arg = std::clamp(g3 / (8.0 * r * r * r), -1.0, 1.0);
    const double th = std::acos(arg) / 3.0;
    e1_ = polish(2 * r * std::cos(th));
    e2_ = polish(2 * r * std::cos(th - 2 * pi / 3));
    e3_ = polish(2 * r * std::cos(th + 2 * pi / 3));
    if (e2_ > e1_) std::swap(e1_, e2_);
    if (e3_ > e2_) std::swap(e2_, e3_);
    if (e2_ > e1_) std::swap(e1_, e2_);
    lambda_ = std::sqrt(e1_ - e3_);
    m_ = (e2_ - e3_) / (e1_ - e3_);
  } else {
    kind_ = RootKind::OneReal;
    // single real root of 4z³ − g₂z − g₃ (Cardano)
    const double q = g3 / 8.0, pp = -g2 / 12.0;
    const double s = std::sqrt(q * q + pp * pp * pp);
    e2_ = polish(std::cbrt(q + s) + std::cbrt(q - s));
    e1_ = e3_ = -0.5 * e2_;
    H_ = std::sqrt(3 * e2_ * e2_ - g2 / 4.0);
    m_ = 0.5 - 3 * e2_ / (4 * H_);
  }
}

double Weierstrass::omega1() const {
  switch (kind_) {
    case RootKind::ThreeReal: return ellint_K(m_) / lambda_;
    case RootKind::OneReal: return ellint_K(m_) / std::sqrt(H_);
    case RootKind::DoubleLower: return pi / (2 * std::sqrt(3 * c_));
    default: return std::numeric_limits<double>::infinity();
  }
}

double Weierstrass::p(double t) const {
  switch (kind_) {
    case RootKind::ThreeReal: {
      const Jacobi j = jacobi(lambda_ * t, m_);
      return e3_ + (e1_ - e3_) / (j.sn * j.sn);
    }
    case RootKind::OneReal: {
      const Jacobi j = jacobi(2 * std::sqrt(H_) * t, m_);
      return e2_ + H_ * (1 + j.cn) / (1 - j.cn);
    }
    case RootKind::DoubleLower: {
      const double s = std::sin(std::sqrt(3 * c_) * t);
      return -c_ + 3 * c_ / (s * s);
    }
    case RootKind::DoubleUpper: {
      const double s = std::sinh(std::sqrt(3 * c_) * t);
      return c_ + 3 * c_ / (s * s);
    }
    case RootKind::Triple: return 1.0 / (t * t);
  }
  return 0.0;
}

double Weierstrass::dp(double t) const {
  switch (kind_) {
    case RootKind::ThreeReal: {
      const Jacobi j = jacobi(lambda_ * t, m_);
      return -2 * lambda_ * lambda_ * lambda_ * j.cn * j.dn / (j.sn * j.sn * j.sn);
    }
    case RootKind::OneReal: {
      const Jacobi j = jacobi(2 * std::sqrt(H_) * t, m_);
      const double d = 1 - j.cn;
      return -4 * H_ * std::sqrt(H_) * j.sn * j.dn / (d * d);
    }
    case RootKind::DoubleLower: {
      const double w = std::sqrt(3 * c_), s = std::sin(w * t);
      return -6 * c_ * w * std::cos(w * t) / (s * s * s);
    }
    case RootKind::DoubleUpper: {
      const double w = std::sqrt(3 * c_), s = std::sinh(w * t);
      return -6 * c_ * w * std::cosh(w * t) / (s * s * s);
    }
    case RootKind::Triple: return -2.0 / (t * t * t);
  }
  return 0.0;
}

double Weierstrass::p_bounded(double s) const {
  switch (kind_) {
    case RootKind::ThreeReal: {
      const Jacobi j = jacobi(lambda_ * s, m_);
      return e3_ + (e2_ - e3_) * j.sn * j.sn;
    }
    case RootKind::DoubleLower: return e3_;
    case RootKind::DoubleUpper: {
      const double ch = std::cosh(std::sqrt(3 * c_) * s);
      return c_ - 3 * c_ / (ch * ch);
    }
    default: throw domain_error("bounded cycle needs real roots");
  }
}

Jacobi Weierstrass::bounded_jacobi(double s) const {
  if (kind_ != RootKind::ThreeReal) throw domain_error("bounded Jacobi form needs three distinct roots");
  return jacobi(lambda_ * s, m_);
}

double Weierstrass::dp_bounded(double s) const {
  switch (kind_) {
    case RootKind::ThreeReal: {
      const Jacobi j = jacobi(lambda_ * s, m_);
      return 2 * (e2_ - e3_) * lambda_ * j.sn * j.cn * j.dn;
    }
    case RootKind::DoubleLower: return 0.0;
    case RootKind::DoubleUpper: {
      const double w = std::sqrt(3 * c_), ch = std::cosh(w * s);
      return 6 * c_ * w * std::sinh(w * s) / (ch * ch * ch);
    }
    default: throw domain_error("bounded cycle needs real roots");
  }
}

double Weierstrass::invert(double z, Cycle cycle) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(z));
  if (cycle == Cycle::RealAxis) {
    switch (kind_) {
      case RootKind::ThreeReal:
        if (z < e1_ - tol) throw domain_error("invert: z below e1 on the real axis");
        z = std::max(z, e1_);
        if (z == e1_) return omega1();
        return carlson_rf(z - e1_, z - e2_, z - e3_);
      case RootKind::OneReal: {
        if (z < e2_ - tol) throw domain_error("invert: z below the real root");
        const double cn = std::clamp((z - e2_ - H_) / (z - e2_ + H_), -1.0, 1.0);
        return ellint_F(std::acos(cn), m_) / (2 * std::sqrt(H_));
      }
      case RootKind::DoubleLower: {
        if (z < e1_ - tol) throw domain_error("invert: z below e1 on the real axis");
        const double w = std::sqrt(3 * c_);
        return std::asin(std::sqrt(std::min(1.0, 3 * c_ / (z + c_)))) / w;
      }
      case RootKind::DoubleUpper: {
        if (z <= e1_) throw domain_error("invert: z must exceed the double root");
        const double w = std::sqrt(3 * c_);
        return std::asinh(std::sqrt(3 * c_ / (z - c_))) / w;
      }
      case RootKind::Triple:
        if (z <= 0) throw domain_error("invert: z must be positive");
        return 1.0 / std::sqrt(z);
    }
  }
  switch (kind_) {
    case RootKind::ThreeReal: {
      if (z < e3_ - tol || z > e2_ + tol) throw domain_error("invert: z outside [e3, e2]");
      const double r = std::clamp((z - e3_) / (e2_ - e3_), 0.0, 1.0);
      return ellint_F(std::asin(std::sqrt(r)), m_) / lambda_;
    }
    case RootKind::DoubleLower:
      if (std::abs(z - e3_) > 1e-8 * std::max(1.0, std::abs(z)))
        throw domain_error("invert: bounded cycle is a single point");
      return 0.0;
    case RootKind::DoubleUpper: {
      if (z < e3_ - tol || z >= e2_) throw domain_error("invert: z outside [e3, e2)");
      const double w = std::sqrt(3 * c_);
      return std::acosh(std::sqrt(std::max(1.0, 3 * c_ / (c_ - z)))) / w;
    }
    default: throw domain_error("bounded cycle needs real roots");
  }
}

double weierstrass_p(double t, double g2, double g3) { return Weierstrass(g2, g3).p(t); }

double invert_weierstrass(double z, double g2, double g3, Cycle cycle) {
  return Weierstrass(g2, g3).invert(z, cycle);
}

}  // namespace gyrochap::elliptic
