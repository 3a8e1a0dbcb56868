#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gyrochap/errors.hpp"
#include "gyrochap/so_n.hpp"

namespace gyrochap::ode {

using Rhs = std::function<void(double t, const Vec& y, Vec& dy)>;
using Projector = std::function<void(Vec& y)>;

struct Options {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 0.0;  // 0 picks a starting step automatically
  double h_max = 0.0;   // 0 means |t1 - t0|
  std::size_t max_steps = 5'000'000;
  double sample_dt = 0.0;  // 0 keeps accepted steps only
  Projector project;       // applied after every accepted step and to samples
  bool keep_dense = true;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

class Trajectory {
 public:
  std::vector<double> t;
  std::vector<Vec> y;
  Stats stats;
  std::map<std::string, std::string> meta;

  std::size_t size() const { return t.size(); }
  int dim() const { return y.empty() ? 0 : static_cast<int>(y.front().size()); }

  /// Continuous extension of order 4 inside the covered interval.
  Vec at(double time) const;
  bool has_dense() const { return !segments_.empty(); }
  double t_begin() const { return t.empty() ? 0.0 : t.front(); }
  double t_end() const { return t.empty() ? 0.0 : t.back(); }

 private:
  friend Trajectory integrate(const Rhs&, double, const Vec&, double, const Options&);
  struct Segment {
    double t0, h;
    Mat rc;  // dim × 5
  };
  std::vector<Segment> segments_;
  Projector project_;
};

/// Embedded Dormand–Prince 5(4) with PI step-size control.
Trajectory integrate(const Rhs& f, double t0, const Vec& y0, double t1, const Options& opt);

}  // namespace gyrochap::ode
