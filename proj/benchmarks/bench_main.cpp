#include <benchmark/benchmark.h>

#include <gyrochap/demchenko_cf.hpp>
#include <gyrochap/elliptic.hpp>
#include <gyrochap/full_flow.hpp>
#include <gyrochap/hamiltonization.hpp>
#include <gyrochap/reduced_flow.hpp>

using namespace gyrochap;

namespace {

RollingSpec special(int n) {
  RollingSpec s;
  s.n = n;
  s.a = Vec::LinSpaced(n, 1.1, 2.3);
  s.D = 0.2;
  s.epsilon = 1.5;
  s.kappa = Mat::Zero(n, n);
  s.kappa(0, 1) = 0.6;
  s.kappa(1, 0) = -0.6;
  return validate_spec(s);
}

DemchenkoSpec isotropic4() {
  DemchenkoSpec d{4, 1.3, 2.0, Mat::Zero(4, 4)};
  d.kappa(0, 1) = 0.7, d.kappa(1, 0) = -0.7, d.kappa(2, 3) = -0.2, d.kappa(3, 2) = 0.2;
  return validate_spec(d);
}

void BM_ReducedRhs(benchmark::State& st) {
  const RollingSpec s = special(static_cast<int>(st.range(0)));
  Rng rng(1);
  const Vec y = random_phase_point(s.n, rng);
  for (auto _ : st) benchmark::DoNotOptimize(reduced_rhs(s, y));
}
BENCHMARK(BM_ReducedRhs)->Arg(3)->Arg(5)->Arg(8);

void BM_IntegrateReduced(benchmark::State& st) {
  const RollingSpec s = special(static_cast<int>(st.range(0)));
  Rng rng(2);
  const Vec y0 = random_phase_point(s.n, rng);
  ode::Options o;
  o.keep_dense = false;
  o.project = [n = s.n](Vec& y) { project_state(y, n); };
  for (auto _ : st) {
    auto tr = ode::integrate([&](double, const Vec& y, Vec& dy) { dy = reduced_rhs(s, y); }, 0.0,
                             y0, 10.0, o);
    benchmark::DoNotOptimize(tr.y.back());
  }
}
BENCHMARK(BM_IntegrateReduced)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ClosedFormBuild(benchmark::State& st) {
  const DemchenkoSpec d = isotropic4();
  Rng rng(3);
  const Vec y0 = random_phase_point(4, rng);
  for (auto _ : st) benchmark::DoNotOptimize(demchenko::ClosedForm(d, y0).period());
}
BENCHMARK(BM_ClosedFormBuild)->Unit(benchmark::kMicrosecond);

void BM_ClosedFormState(benchmark::State& st) {
  const DemchenkoSpec d = isotropic4();
  Rng rng(3);
  const demchenko::ClosedForm cf(d, random_phase_point(4, rng));
  double t = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(cf.state(t));
    t += 0.37;
  }
}
BENCHMARK(BM_ClosedFormState)->Unit(benchmark::kMicrosecond);

void BM_WeierstrassP(benchmark::State& st) {
  const elliptic::Weierstrass w(4.0, -1.0);
  double t = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(w.p(t));
    t = t > 2.0 ? 0.1 : t + 0.013;
  }
}
BENCHMARK(BM_WeierstrassP);

void BM_MeasureCheck(benchmark::State& st) {
  const RollingSpec s = special(4);
  for (auto _ : st) benchmark::DoNotOptimize(check_measure(s, 5, 100).residual);
}
BENCHMARK(BM_MeasureCheck)->Unit(benchmark::kMillisecond);

void BM_Reconstruction(benchmark::State& st) {
  const RollingSpec s = special(4);
  Rng rng(4);
  ode::Options o;
  o.sample_dt = 0.01;
  o.project = [](Vec& y) { project_state(y, 4); };
  const auto tr = ode::integrate([&](double, const Vec& y, Vec& dy) { dy = reduced_rhs(s, y); },
                                 0.0, random_phase_point(4, rng), 5.0, o);
  for (auto _ : st) benchmark::DoNotOptimize(reconstruct_full(s, tr, Mat::Identity(4, 4)).samples.size());
}
BENCHMARK(BM_Reconstruction)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
