#include "gyrochap/sampling.hpp"

namespace gyrochap {

Vec random_unit(int n, Rng& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = N(rng);
  } while (v.norm() < 1e-3);
  return v.normalized();
}

Vec random_tangent(const Vec& gamma, Rng& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  Vec v(gamma.size());
  for (int i = 0; i < v.size(); ++i) v(i) = N(rng);
  return v - v.dot(gamma) * gamma;
}

Vec random_phase_point(int n, Rng& rng, double p_scale) {
  Vec y(2 * n);
  const Vec g = random_unit(n, rng);
  y.head(n) = g;
  y.tail(n) = p_scale * random_tangent(g, rng);
  return y;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace gyrochap
