#include "gyrochap/full_flow.hpp"

#include <cmath>

#include "gyrochap/reduced_flow.hpp"

namespace gyrochap {

Lift horizontal_lift_velocity(const RollingSpec& s, const Mat& g, const Vec& gamma,
                              const Vec& gamma_dot) {
  const double e = s.epsilon;
  Lift l;
  l.omega = wedge(gamma, gamma_dot) / e;
  l.r_dot = contact_radius(s) * (1.0 - 1.0 / e) * (g * gamma_dot);
  return l;
}

Vec contact_direction(const RollingSpec& s, const Mat& g, const Vec& r) {
  return g.transpose() * r / contact_radius(s);
}

namespace {

Mat omega_at(const RollingSpec& s, const ode::Trajectory& red, double t, Vec* gamma = nullptr) {
  const Vec y = red.at(t);
  const Vec g = y.head(s.n), p = y.segment(s.n, s.n);
  if (gamma) *gamma = g;
  return wedge(g, legendre_inverse(s, g, p)) / s.epsilon;
}

}  // namespace

FullTrajectory reconstruct_full(const RollingSpec& s, const ode::Trajectory& red, const Mat& g0,
                                int substeps) {
  if (!red.has_dense()) throw domain_error("reconstruction needs dense output");
  const int n = s.n;
  FullTrajectory out;
  out.radius = contact_radius(s);
  Mat g = orthonormalize(g0);
  const double c = std::sqrt(3.0) / 6.0;
  for (std::size_t k = 0; k < red.size(); ++k) {
    if (k > 0) {
      const double t0 = red.t[k - 1], dt = (red.t[k] - t0) / substeps;
      for (int j = 0; j < substeps; ++j) {
        const double ta = t0 + j * dt;
        const Mat w1 = omega_at(s, red, ta + (0.5 - c) * dt);
        const Mat w2 = omega_at(s, red, ta + (0.5 + c) * dt);
        const Mat Om = 0.5 * dt * (w1 + w2) + (std::sqrt(3.0) / 12.0) * dt * dt * commutator(w1, w2);
        g = orthonormalize(g * so_exp(Om));
      }
    }
    FullSample smp;
    smp.t = red.t[k];
    smp.gamma = red.y[k].head(n);
    const Vec p = red.y[k].segment(n, n);
    smp.omega = wedge(smp.gamma, legendre_inverse(s, smp.gamma, p)) / s.epsilon;
    smp.g = g;
    smp.r = out.radius * (g * smp.gamma);
    out.samples.push_back(std::move(smp));
  }
  return out;
}

namespace {

template <class Get>
auto five_point(const Get& get, std::size_t k, double h, std::size_t stride) {
  using R = decltype(get(k));
  const std::size_t d = stride;
  return R((get(k - 2 * d) - 8.0 * get(k - d) + 8.0 * get(k + d) - get(k + 2 * d)) /
           (12.0 * h * double(d)));
}

}  // namespace

FullResiduals full_residuals(const RollingSpec& s, const FullTrajectory& tr) {
  FullResiduals res;
  const auto& S = tr.samples;
  const int n = s.n;
  const Mat K = kappa_or_zero(s);
  const Mat I = Mat::Identity(n, n);
  for (const auto& x : S) {
    res.orthogonality = std::max(res.orthogonality, max_abs(x.g.transpose() * x.g - I));
    res.no_twist = std::max(res.no_twist, max_abs(x.omega - project_to_gamma_plane(x.omega, x.gamma)));
    res.contact = std::max(res.contact,
                           (x.gamma - x.g.transpose() * x.r / tr.radius).cwiseAbs().maxCoeff());
  }
  if (S.size() < 9) return res;
  const double h = S[1].t - S[0].t;
  auto om = [&](std::size_t i) -> Mat { return S[i].omega; };
  auto rr = [&](std::size_t i) -> Vec { return S[i].r; };
  for (std::size_t k = 4; k + 4 < S.size(); ++k) {
    const auto& x = S[k];
    const Mat wd = five_point(om, k, h, 1);
    const Mat wd2 = five_point(om, k, h, 2);
    const Mat Iw = inertia_apply(s.a, x.omega);
    auto lhs = [&](const Mat& dw) {
      return Mat(inertia_apply(s.a, dw) - commutator(Iw, x.omega) - commutator(K, x.omega));
    };
    const Mat L = lhs(wd), L2 = lhs(wd2);
    const Mat PL = project_to_gamma_plane(L, x.gamma);
    res.admissible = std::max(res.admissible, max_abs(PL));
    res.admissible_coarse =
        std::max(res.admissible_coarse, max_abs(project_to_gamma_plane(L2, x.gamma)));
    res.multiplier = std::max(res.multiplier, max_abs(L - PL));

    const Vec rd = five_point(rr, k, h, 1);
    const Vec pred = (1.0 - s.epsilon) * (x.g * x.omega * x.g.transpose() * x.r);
    res.rolling = std::max(res.rolling, (rd - pred).cwiseAbs().maxCoeff());
  }
  return res;
}

}  // namespace gyrochap
