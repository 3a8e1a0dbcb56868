#include "gyrochap/integrals.hpp"

#include <cmath>
#include <sstream>

#include "gyrochap/hamiltonization.hpp"

namespace gyrochap {

const char* to_string(Family f) {
  switch (f) {
    case Family::Generic: return "generic";
    case Family::SO2xSOn2: return "so2_son2";
    case Family::Isotropic: return "isotropic";
  }
  return "unknown";
}

namespace {

bool block_diagonal(const Mat& K, double tol) {
  const int n = static_cast<int>(K.rows());
  const double scale = std::max(1.0, max_abs(K));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool in_block = (i / 2 == j / 2) && (i != j);
      if (!in_block && std::abs(K(i, j)) > tol * scale) return false;
    }
  return true;
}

bool all_equal(const Vec& a, int from, double tol) {
  for (int i = from + 1; i < a.size(); ++i)
    if (std::abs(a(i) - a(from)) > tol * std::max(1.0, std::abs(a(from)))) return false;
  return true;
}

}  // namespace

Family classify(const RollingSpec& s, double tol) {
  const Mat K = kappa_or_zero(s);
  if (all_equal(s.a, 0, tol) && block_diagonal(K, tol)) return Family::Isotropic;
  if (std::abs(s.a(0) - s.a(1)) <= tol * std::max(1.0, s.a(0)) && is_son2_family(s, tol))
    return Family::SO2xSOn2;
  return Family::Generic;
}

double phi12_son2(const RollingSpec& s, const Vec& y) {
  const int n = s.n;
  const Vec g = y.head(n), p = y.tail(n);
  const double e = s.epsilon;
  const double A = cal_A(s, g);
  const double k12 = kappa_or_zero(s)(0, 1);
  return e * std::pow(A, 1.0 / (2 * e) - 1.0) * (g(0) * p(1) - g(1) * p(0)) +
         k12 / (s.a(0) - s.a(2)) * std::pow(A, 1.0 / (2 * e));
}

double phi12_twisted(const RollingSpec& s, const Vec& y) {
  const int n = s.n;
  const Vec g = y.head(n), pt = y.tail(n);
  const double e = s.epsilon;
  const double k12 = kappa_or_zero(s)(0, 1);
  return g(0) * pt(1) - g(1) * pt(0) +
         k12 / (s.a(0) - s.a(2)) * std::pow(cal_A(s, g), 1.0 / (2 * e));
}

double phi_ij_son2(const RollingSpec& s, const Vec& y, int i, int j) {
  const int n = s.n;
  const double e = s.epsilon;
  const Vec g = y.head(n), p = y.tail(n);
  return e * std::pow(cal_A(s, g), 1.0 / (2 * e) - 1.0) * (g(i) * p(j) - g(j) * p(i));
}

double phi_block(const DemchenkoSpec& s, const Vec& y, int i, int j) {
  const int n = s.n;
  const double e2 = s.epsilon * s.epsilon;
  const double gi = y(i), gj = y(j), pi = y(n + i), pj = y(n + j);
  return gi * pj - gj * pi + s.kappa(i, j) / (2 * e2) * (gi * gi + gj * gj);
}

std::vector<Integral> integral_suite(const RollingSpec& s0) {
  const RollingSpec s = s0;
  std::vector<Integral> out;
  out.push_back({"h", [s](const Vec& y) { return hamiltonian(s, y.head(s.n), y.tail(s.n)); }});
  switch (classify(s)) {
    case Family::SO2xSOn2: {
      if (std::abs(s.a(0) - s.a(2)) > 0) {
        out.push_back({"Phi_12", [s](const Vec& y) { return phi12_son2(s, y); }});
      }
      for (int i = 2; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j) {
          std::ostringstream nm;
          nm << "Phi_" << i + 1 << j + 1;
          out.push_back({nm.str(), [s, i, j](const Vec& y) { return phi_ij_son2(s, y, i, j); }});
        }
      break;
    }
    case Family::Isotropic: {
      DemchenkoSpec d{s.n, s.a(0) * s.a(0), s.epsilon, kappa_or_zero(s)};
      auto rest = integral_suite(d);
      out.insert(out.end(), rest.begin() + 1, rest.end());
      break;
    }
    case Family::Generic:
      break;
  }
  return out;
}

std::vector<Integral> integral_suite(const DemchenkoSpec& s0) {
  const DemchenkoSpec s = s0;
  std::vector<Integral> out;
  out.push_back({"h", [s](const Vec& y) {
                   return s.epsilon * s.epsilon / (2 * s.tau) * y.tail(s.n).squaredNorm();
                 }});
  for (int i = 0; i + 1 < s.n; i += 2) {
    std::ostringstream nm;
    nm << "Phi_" << i + 1 << i + 2;
    out.push_back({nm.str(), [s, i](const Vec& y) { return phi_block(s, y, i, i + 1); }});
  }
  return out;
}

namespace {

Vec gradient(const PhaseFunction& F, const Vec& y) {
  Vec g(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double h = 1e-5 * std::max(1.0, std::abs(y(i)));
    Vec yp = y, ym = y;
    yp(i) += h;
    ym(i) -= h;
    g(i) = (F(yp) - F(ym)) / (2 * h);
  }
  return g;
}

}  // namespace

double dirac_bracket(const PhaseFunction& F, const PhaseFunction& G, const Mat& M,
                     const Vec& y) {
  const Eigen::Index n = y.size() / 2;
  auto bracket = [&](const Vec& dF, const Vec& dG) {
    return dF.head(n).dot(dG.tail(n)) - dF.tail(n).dot(dG.head(n)) +
           dF.tail(n).dot(M * dG.tail(n));
  };
  const Vec dF = gradient(F, y), dG = gradient(G, y);
  Vec dphi1(2 * n), dphi2(2 * n);
  dphi1 << 2.0 * y.head(n), Vec::Zero(n);
  dphi2 << y.tail(n), y.head(n);
  const double c12 = bracket(dphi1, dphi2);
  return bracket(dF, dG) -
         (bracket(dF, dphi1) * bracket(dG, dphi2) - bracket(dF, dphi2) * bracket(dG, dphi1)) /
             c12;
}

std::vector<DriftEntry> drift_report(const std::vector<Integral>& suite,
                                     const ode::Trajectory& tr) {
  std::vector<DriftEntry> out;
  for (const auto& I : suite) {
    DriftEntry d;
    d.name = I.name;
    d.initial = I.eval(tr.y.front());
    for (std::size_t k = 0; k < tr.size(); ++k) {
      const double dv = std::abs(I.eval(tr.y[k]) - d.initial);
      if (dv > d.max_abs) {
        d.max_abs = dv;
        d.worst_time = tr.t[k];
      }
    }
    d.max_rel = d.max_abs / std::max(1.0, std::abs(d.initial));
    out.push_back(d);
  }
  return out;
}

}  // namespace gyrochap
