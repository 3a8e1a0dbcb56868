#include "gyrochap/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gyrochap::ode {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// Local error is held to a tenth of the requested tolerance so that errors
// accumulated over long runs stay near rtol.
constexpr double kLocalTolFactor = 0.1;

double err_norm(const Vec& err, const Vec& y0, const Vec& y1, double atol, double rtol) {
  double acc = 0.0;
  const auto n = err.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    double sc = atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    double r = err(i) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

double initial_step(const Rhs& f, double t0, const Vec& y0, const Vec& f0, double dir,
                    double hmax, double atol, double rtol, Stats& st) {
  const Vec sc = (atol + rtol * y0.cwiseAbs().array()).matrix();
  double dnf = f0.cwiseQuotient(sc).squaredNorm() / y0.size();
  double dny = y0.cwiseQuotient(sc).squaredNorm() / y0.size();
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
  h = std::min(h, hmax);
  Vec y1 = y0 + dir * h * f0, f1(y0.size());
  f(t0 + dir * h, y1, f1);
  ++st.rhs_evals;
  double der2 = (f1 - f0).cwiseQuotient(sc).norm() / std::sqrt(double(y0.size())) / h;
  double der12 = std::max(std::abs(der2), std::sqrt(dnf));
  double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3)
                             : std::pow(0.01 / der12, 1.0 / 5.0);
  return std::min({100.0 * h, h1, hmax});
}

}  // namespace

Vec Trajectory::at(double time) const {
  if (segments_.empty()) throw domain_error("trajectory has no dense output");
  const bool forward = segments_.front().h > 0;
  auto key = [&](const Segment& s) { return forward ? s.t0 : -s.t0; };
  double k = forward ? time : -time;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), k,
                             [&](double v, const Segment& s) { return v < key(s); });
  if (it != segments_.begin()) --it;
  const Segment& s = *it;
  double th = (time - s.t0) / s.h;
  if (th < -1e-9 || th > 1.0 + 1e-9) {
    const Segment& last = segments_.back();
    double tend = last.t0 + last.h;
    if (!(th >= -1e-9 && (forward ? time <= tend + 1e-12 : time >= tend - 1e-12))) {
      std::ostringstream os;
      os << "time " << time << " outside integrated interval";
      throw domain_error(os.str());
    }
  }
  const double th1 = 1.0 - th;
  Vec out = s.rc.col(0) +
            th * (s.rc.col(1) + th1 * (s.rc.col(2) + th * (s.rc.col(3) + th1 * s.rc.col(4))));
  if (project_) project_(out);
  return out;
}

Trajectory integrate(const Rhs& f, double t0, const Vec& y0, double t1, const Options& opt) {
  Trajectory tr;
  tr.project_ = opt.project;
  const Eigen::Index n = y0.size();
  Vec y = y0;
  if (opt.project) opt.project(y);
  tr.t.push_back(t0);
  tr.y.push_back(y);
  if (t1 == t0) return tr;

  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  const double hmax = opt.h_max > 0 ? std::min(opt.h_max, span) : span;

  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), y1(n), err(n);
  Stats& st = tr.stats;
  auto eval = [&](double t, const Vec& x, Vec& dx) {
    f(t, x, dx);
    ++st.rhs_evals;
  };

  eval(t0, y, k1);
  if (!k1.allFinite())
    throw integration_error(IntegrationFailure::NonFinite, t0, "non-finite derivative at start");

  double h = opt.h_init > 0 ? std::min(opt.h_init, hmax)
                            : initial_step(f, t0, y, k1, dir, hmax, kLocalTolFactor * opt.atol,
                                           kLocalTolFactor * opt.rtol, st);
  double t = t0;
  double facold = 1e-4;
  bool last_rejected = false;
  double next_sample = opt.sample_dt > 0 ? t0 + dir * opt.sample_dt : 0.0;
  std::size_t sample_index = 1;

  constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
  constexpr double facmin = 0.2, facmax = 10.0;

  while (dir * (t1 - t) > 0) {
    if (st.accepted + st.rejected >= opt.max_steps)
      throw integration_error(IntegrationFailure::MaxSteps, t, "step budget exhausted");
    bool final_step = false;
    if (dir * (t + dir * h - t1) >= 0 || std::abs(t1 - t - dir * h) < 1e-12 * span) {
      h = std::abs(t1 - t);
      final_step = true;
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os << "step size underflow at t = " << t;
      throw integration_error(IntegrationFailure::StepUnderflow, t, os.str());
    }
    const double hs = dir * h;
    yt.noalias() = y + hs * a21 * k1;
    eval(t + c2 * hs, yt, k2);
    yt.noalias() = y + hs * (a31 * k1 + a32 * k2);
    eval(t + c3 * hs, yt, k3);
    yt.noalias() = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    eval(t + c4 * hs, yt, k4);
    yt.noalias() = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    eval(t + c5 * hs, yt, k5);
    yt.noalias() = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    eval(t + hs, yt, k6);
    y1.noalias() = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    eval(t + hs, y1, k7);
    err.noalias() = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double e = err_norm(err, y, y1, kLocalTolFactor * opt.atol, kLocalTolFactor * opt.rtol);

    if (!std::isfinite(e)) {
      ++st.rejected;
      h *= 0.1;
      last_rejected = true;
      if (h < 1e-14 * std::max(1.0, std::abs(t)))
        throw integration_error(IntegrationFailure::NonFinite, t,
                                "non-finite state or derivative");
      continue;
    }

    double fac11 = std::pow(e, expo1);
    double fac = fac11 / std::pow(facold, beta) / safe;
    fac = std::clamp(fac, 1.0 / facmax, 1.0 / facmin);
    double hnew = h / fac;

    if (e > 1.0) {
      ++st.rejected;
      h /= std::min(1.0 / facmin, fac11 / safe);
      last_rejected = true;
      continue;
    }

    ++st.accepted;
    facold = std::max(e, 1e-4);
    if (last_rejected) hnew = std::min(hnew, h);
    last_rejected = false;

    Trajectory::Segment seg;
    if (opt.keep_dense || opt.sample_dt > 0) {
      seg.t0 = t;
      seg.h = hs;
      seg.rc.resize(n, 5);
      const Vec ydiff = y1 - y;
      const Vec bspl = hs * k1 - ydiff;
      seg.rc.col(0) = y;
      seg.rc.col(1) = ydiff;
      seg.rc.col(2) = bspl;
      seg.rc.col(3) = ydiff - hs * k7 - bspl;
      seg.rc.col(4) = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
    }

    const double tnew = final_step ? t1 : t + hs;
    if (opt.sample_dt > 0) {
      while (dir * (next_sample - tnew) < -1e-12 * span) {
        double th = (next_sample - t) / hs;
        double th1 = 1.0 - th;
        Vec ys = seg.rc.col(0) +
                 th * (seg.rc.col(1) +
                       th1 * (seg.rc.col(2) + th * (seg.rc.col(3) + th1 * seg.rc.col(4))));
        if (opt.project) opt.project(ys);
        tr.t.push_back(next_sample);
        tr.y.push_back(std::move(ys));
        ++sample_index;
        next_sample = t0 + dir * opt.sample_dt * static_cast<double>(sample_index);
      }
    }
    if (opt.keep_dense) tr.segments_.push_back(std::move(seg));

    y = y1;
    t = tnew;
    bool projected = false;
    if (opt.project) {
      opt.project(y);
      projected = true;
    }
    if (!y.allFinite())
      throw integration_error(IntegrationFailure::NonFinite, t, "non-finite state");
    if (projected) {
      eval(t, y, k1);
    } else {
      k1 = k7;
    }
    if (!k1.allFinite())
      throw integration_error(IntegrationFailure::NonFinite, t, "non-finite derivative");

    if (opt.sample_dt <= 0 || final_step) {
      if (opt.sample_dt <= 0 || std::abs(tr.t.back() - t) > 1e-12 * span) {
        tr.t.push_back(t);
        tr.y.push_back(y);
      } else {
        tr.t.back() = t;
        tr.y.back() = y;
      }
    }
    h = std::min(hnew, hmax);
  }
  return tr;
}

}  // namespace gyrochap::ode
