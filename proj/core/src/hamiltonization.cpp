#include "gyrochap/hamiltonization.hpp"

#include <cmath>
#include <sstream>

#include "gyrochap/reduced_flow.hpp"

namespace gyrochap {

bool is_son2_family(const RollingSpec& s, double tol) {
  if (s.n < 3) return false;
  for (int i = 3; i < s.n; ++i)
    if (std::abs(s.a(i) - s.a(2)) > tol * std::max(1.0, std::abs(s.a(2)))) return false;
  const Mat K = kappa_or_zero(s);
  const double scale = std::max(1.0, max_abs(K));
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) {
      if ((i == 0 && j == 1) || (i == 1 && j == 0)) continue;
      if (std::abs(K(i, j)) > tol * scale) return false;
    }
  return true;
}

double cal_A(const RollingSpec& s, const Vec& g) {
  const double a3 = s.a(2);
  return a3 + (s.a(0) - a3) * g(0) * g(0) + (s.a(1) - a3) * g(1) * g(1);
}

Vec cal_A_gradient(const RollingSpec& s, const Vec& g) {
  Vec d = Vec::Zero(g.size());
  d(0) = 2.0 * (s.a(0) - s.a(2)) * g(0);
  d(1) = 2.0 * (s.a(1) - s.a(2)) * g(1);
  return d;
}

double multiplier_N(const RollingSpec& s, const Vec& gamma) {
  const double e = s.epsilon;
  return e * std::pow(a_quad(s, gamma), 1.0 / (2.0 * e) - 1.0);
}

double multiplier_N_derivative(const RollingSpec& s, const Vec& gamma, const Vec& X) {
  const double e = s.epsilon;
  const double k = 1.0 / (2.0 * e) - 1.0;
  const double A = a_quad(s, gamma);
  return e * k * std::pow(A, k - 1.0) * 2.0 * s.a.cwiseProduct(gamma).dot(X);
}

double measure_exponent(const RollingSpec& s) {
  const double n = s.n;
  return (n - 2.0) / (2.0 * s.epsilon) + 2.0 - n;
}

double measure_density(const RollingSpec& s, const Vec& gamma) {
  return std::pow(a_quad(s, gamma) / s.a(2), measure_exponent(s));
}

double measure_density_det(const RollingSpec& s, const Vec& gamma) {
  const Mat E = tangent_basis(gamma);
  const int m = static_cast<int>(E.cols());
  Mat R(m, m);
  for (int i = 0; i < m; ++i) {
    const Mat Ii = inertia_apply(s.a, wedge(gamma, E.col(i)));
    for (int j = 0; j < m; ++j) R(i, j) = lie_inner(Ii, wedge(gamma, E.col(j)));
  }
  return std::pow(R.determinant(), 1.0 / (2.0 * s.epsilon) - 1.0);
}

namespace {

// Orthographic chart of the sphere around γ₀: γ(x) = √(1−|x|²) γ₀ + E x.
struct Chart {
  Vec g0;
  Mat E;

  explicit Chart(const Vec& gamma0) : g0(gamma0), E(tangent_basis(gamma0)) {}

  int dim() const { return static_cast<int>(E.cols()); }
  double s(const Vec& x) const { return std::sqrt(1.0 - x.squaredNorm()); }
  Vec gamma(const Vec& x) const { return s(x) * g0 + E * x; }
  Mat jacobian(const Vec& x) const { return E - g0 * x.transpose() / s(x); }
  // ∂²γ/∂xₖ∂xₗ = γ₀ H_kl
  Mat hess(const Vec& x) const {
    const double sx = s(x);
    return -(Mat::Identity(dim(), dim()) / sx + x * x.transpose() / (sx * sx * sx));
  }
};

// reduced field in canonical chart coordinates z = (x, p_x), scaled by ν
Vec chart_field(const RollingSpec& s, const Chart& c, const Vec& z, double exponent) {
  const int m = c.dim();
  const Vec x = z.head(m), px = z.tail(m);
  const Vec g = c.gamma(x);
  const Mat J = c.jacobian(x);
  const Eigen::LDLT<Mat> JtJ(J.transpose() * J);
  const Vec p = J * JtJ.solve(px);
  const Vec dy = reduced_rhs(s, pack(g, p));
  const Vec xd = JtJ.solve(J.transpose() * dy.head(s.n));
  const Vec pxd = (c.hess(x) * xd) * c.g0.dot(p) + J.transpose() * dy.tail(s.n);
  Vec out(2 * m);
  out << xd, pxd;
  return std::pow(a_quad(s, g), exponent) * out;
}

}  // namespace

double measure_divergence(const RollingSpec& s, const Vec& y, double exponent) {
  const int n = s.n;
  Vec g0 = y.head(n).normalized();
  Vec p0 = y.tail(n) - y.tail(n).dot(g0) * g0;
  Chart c(g0);
  const int m = c.dim();
  Vec z0(2 * m);
  z0 << Vec::Zero(m), c.E.transpose() * p0;
  double div = 0.0;
  for (int i = 0; i < 2 * m; ++i) {
    auto D = [&](double h) {
      Vec zp = z0, zm = z0;
      zp(i) += h;
      zm(i) -= h;
      return (chart_field(s, c, zp, exponent)(i) - chart_field(s, c, zm, exponent)(i)) / (2 * h);
    };
    const double h = 1e-4 * std::max(1.0, std::abs(z0(i)));
    div += (4.0 * D(0.5 * h) - D(h)) / 3.0;
  }
  return div;
}

CheckResult check_measure(const RollingSpec& s, std::uint64_t seed, int samples, double tol,
                          double exponent_shift, double p_scale) {
  Rng rng(seed);
  const double k = measure_exponent(s) + exponent_shift;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vec y = random_phase_point(s.n, rng, p_scale);
    worst = std::max(worst, std::abs(measure_divergence(s, y, k)));
  }
  std::ostringstream os;
  os << "exponent " << k << ", " << samples << " phase points";
  return {"measure", worst <= tol, worst, tol, os.str()};
}

CheckResult theta_form_check(const RollingSpec& s, std::uint64_t seed, int samples) {
  Rng rng(seed);
  const double k = measure_exponent(s);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vec g = random_unit(s.n, rng);
    const Vec X = random_tangent(g, rng);
    const Mat E = tangent_basis(g);
    double theta = 0.0;
    for (int j = 0; j < E.cols(); ++j) theta += E.col(j).dot(gyro_tensor_C(s, g, X, E.col(j)));
    const double dlnnu = k * 2.0 * s.a.cwiseProduct(g).dot(X) / a_quad(s, g);
    worst = std::max(worst, std::abs(theta - dlnnu));
  }
  const double tol = 1e-9;
  return {"theta", worst <= tol, worst, tol, "tr C(X,.) against X(ln nu)"};
}

CheckResult check_phi_simple(const RollingSpec& s, std::uint64_t seed, int samples,
                             double tol) {
  Rng rng(seed);
  double worst_full = 0.0, worst_quad = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vec g = random_unit(s.n, rng);
    const Vec X = random_tangent(g, rng), Y = random_tangent(g, rng);
    const double N = multiplier_N(s, g);
    const double XN = multiplier_N_derivative(s, g, X), YN = multiplier_N_derivative(s, g, Y);
    const Vec C = gyro_tensor_C(s, g, X, Y);
    worst_full = std::max(worst_full, (C - (XN * Y - YN * X) / N).norm());

    const Vec p = random_tangent(g, rng);
    const Vec v = legendre_inverse(s, g, p);
    const double vN = multiplier_N_derivative(s, g, v);
    const double pi_jk = -jk_force(s, g, p).dot(X);
    const double pi_n = (p.dot(v) * XN - vN * p.dot(X)) / N;
    worst_quad = std::max(worst_quad, std::abs(pi_jk - pi_n));
  }
  const double worst = std::max(worst_full, worst_quad);
  std::ostringstream os;
  os << "full identity " << worst_full << ", quadratic identity " << worst_quad;
  return {"phi_simple", worst <= tol, worst, tol, os.str()};
}

CheckResult check_magnetic_closedness(const RollingSpec& s, std::uint64_t seed, int samples,
                                      double tol) {
  const int m = s.n - 1;
  if (m < 3) return {"closedness", true, 0.0, tol, "no nonzero 3-forms on S^2"};
  Rng rng(seed);
  const Mat K = kappa_or_zero(s);
  const double e2 = s.epsilon * s.epsilon;
  double worst = 0.0;
  for (int smp = 0; smp < samples; ++smp) {
    const Chart c(random_unit(s.n, rng));
    auto omega = [&](const Vec& x, int i, int j) {
      const Mat J = c.jacobian(x);
      return multiplier_N(s, c.gamma(x)) * J.col(i).dot(K * J.col(j)) / e2;
    };
    auto d = [&](int l, int i, int j) {
      auto D = [&](double h) {
        Vec xp = Vec::Zero(m), xm = Vec::Zero(m);
        xp(l) = h;
        xm(l) = -h;
        return (omega(xp, i, j) - omega(xm, i, j)) / (2 * h);
      };
      return (4.0 * D(5e-5) - D(1e-4)) / 3.0;
    };
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
          const double dw = d(i, j, k) - d(j, i, k) + d(k, i, j);
          worst = std::max(worst, std::abs(dw));
        }
  }
  return {"closedness", worst <= tol, worst, tol, "max |d(N f)| over chart triples"};
}

EquivalenceReport hamiltonization_equivalence(const RollingSpec& s, const Vec& y0,
                                              double t_end, const ode::Options& opt,
                                              double sample_dt) {
  const int n = s.n;
  Vec z0(2 * n + 1);
  z0 << y0, 0.0;
  ode::Options o1 = opt;
  o1.sample_dt = sample_dt;
  o1.project = [n](Vec& y) { project_state(y, n); };
  const auto red = ode::integrate(
      [&](double, const Vec& z, Vec& dz) {
        dz.resize(z.size());
        dz.head(2 * n) = reduced_rhs(s, z.head(2 * n));
        dz(2 * n) = multiplier_N(s, z.head(n));
      },
      0.0, z0, t_end, o1);

  Vec w0 = y0;
  w0.tail(n) *= multiplier_N(s, y0.head(n));
  const double tau_end = red.y.back()(2 * n);
  ode::Options o2 = opt;
  o2.sample_dt = 0.0;
  o2.keep_dense = true;
  o2.project = o1.project;
  const auto tw = ode::integrate([&](double, const Vec& w, Vec& dw) { dw = twisted_rhs(s, w); },
                                 0.0, w0, tau_end, o2);

  EquivalenceReport rep;
  rep.tau_end = tau_end;
  for (std::size_t k = 0; k < red.size(); ++k) {
    const Vec gw = tw.at(red.y[k](2 * n)).head(n);
    const double err = (gw - red.y[k].head(n)).cwiseAbs().maxCoeff();
    if (err > rep.max_gamma_error) {
      rep.max_gamma_error = err;
      rep.worst_time = red.t[k];
    }
    ++rep.samples;
  }
  return rep;
}

}  // namespace gyrochap
