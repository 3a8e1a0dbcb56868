#pragma once

#include <gyrochap/model.hpp>
#include <gyrochap/sampling.hpp>

namespace gyrochap::testing {

inline Mat kappa12(int n, double k) {
  Mat K = Mat::Zero(n, n);
  K(0, 1) = k;
  K(1, 0) = -k;
  return K;
}

inline RollingSpec random_generic(int n, double eps, Rng& rng) {
  RollingSpec s;
  s.n = n;
  s.a = Vec(n);
  for (int i = 0; i < n; ++i) s.a(i) = uniform(rng, 0.7, 1.8);
  s.D = 0.1;
  s.epsilon = eps;
  Mat K(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) K(i, j) = uniform(rng, -1, 1);
  s.kappa = K - K.transpose();
  return validate_spec(s);
}

/// a₁ = a₂, a₃ = … = aₙ, κ = κ₁₂ e₁∧e₂
inline RollingSpec son2_spec(int n, double a1, double a3, double eps, double k12) {
  RollingSpec s;
  s.n = n;
  s.a = Vec::Constant(n, a3);
  s.a(0) = s.a(1) = a1;
  s.epsilon = eps;
  s.kappa = kappa12(n, k12);
  return validate_spec(s);
}

inline DemchenkoSpec demchenko_spec(int n, double tau, double eps, double k12, double k34 = 0) {
  DemchenkoSpec d;
  d.n = n;
  d.tau = tau;
  d.epsilon = eps;
  d.kappa = kappa12(n, k12);
  if (n >= 4) {
    d.kappa(2, 3) = k34;
    d.kappa(3, 2) = -k34;
  }
  return validate_spec(d);
}

}  // namespace gyrochap::testing
