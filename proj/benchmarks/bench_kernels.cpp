#include <benchmark/benchmark.h>

#include "hdsphere/convergence.hpp"
#include "hdsphere/fields.hpp"
#include "hdsphere/specfun.hpp"

using namespace hdsphere;

namespace {

MediumConfig scenario(double eps, double k = 1.0) {
  MediumConfig c;
  c.k = k;
  c.eps = eps;
  return c;
}

void BM_SphBesselReal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::sph_bessel_real(n, 7.3));
}
BENCHMARK(BM_SphBesselReal)->Arg(16)->Arg(64)->Arg(256);

void BM_SphBesselComplex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::sph_bessel_complex(n, cdouble(3.0, 250.0)));
}
BENCHMARK(BM_SphBesselComplex)->Arg(16)->Arg(64)->Arg(256);

void BM_LogDerivative(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const cdouble z = scenario(1e-6).z1();
  for (auto _ : state) benchmark::DoNotOptimize(specfun::log_derivative_j(n, z));
}
BENCHMARK(BM_LogDerivative)->Arg(16)->Arg(64)->Arg(256);

void BM_SolvePenetrable(benchmark::State& state) {
  const MediumConfig cfg = scenario(1e-4, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_penetrable(cfg, 1e-12));
}
BENCHMARK(BM_SolvePenetrable)->Arg(1)->Arg(10)->Arg(40);

void BM_FarFieldSupDiff(benchmark::State& state) {
  const auto sol = solve_penetrable(scenario(1e-4), 1e-12);
  for (auto _ : state) benchmark::DoNotOptimize(far_field_sup_diff(sol));
}
BENCHMARK(BM_FarFieldSupDiff);

void BM_Kirchhoff(benchmark::State& state) {
  const auto sol = solve_penetrable(scenario(1e-3), 1e-12);
  const auto mu = chebyshev_mu_grid(101);
  const auto orders = default_quad_orders(sol, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(far_field_from_boundary(sol, ScattererKind::penetrable, 2.0, orders, mu));
  }
}
BENCHMARK(BM_Kirchhoff)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const auto grid = geometric_grid(1e-1, 0.25, 10);
  SweepOptions opt;
  opt.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(scenario(1e-2), grid, Metric::trace_norm, opt));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
