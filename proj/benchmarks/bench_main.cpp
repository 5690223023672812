#include <benchmark/benchmark.h>

#include "pilotwave/dynamics.hpp"
#include "pilotwave/field_residual.hpp"
#include "pilotwave/modes.hpp"
#include "pilotwave/specfun.hpp"
#include "pilotwave/transparency.hpp"

using namespace pilotwave;

namespace {

MediumParams weak_field() { return MediumParams::with_effective_mass(-1.0, 1e-3, 1.0, 1.0); }

void BM_Confluent1F1(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::confluent_1f1(0.5, 1.5, x));
    benchmark::DoNotOptimize(specfun::confluent_1f1(-0.5, 2.0, -x));
  }
}
BENCHMARK(BM_Confluent1F1)->Arg(1)->Arg(10)->Arg(40);

void BM_RadialProfile(benchmark::State& state) {
  const auto p = weak_field();
  const auto mode = modes::make_mode({static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 0.0}, p);
  double rho = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(modes::radial_profile(mode, rho));
    rho = rho > 200.0 ? 1.0 : rho + 0.37;
  }
}
BENCHMARK(BM_RadialProfile)->Args({0, 0})->Args({3, 2})->Args({-5, 6});

void BM_IntegrateWorldline(benchmark::State& state) {
  const auto p = MediumParams::with_effective_mass(-1.0, 1e-2, 1.0, 1.0);
  const auto orbit = dynamics::orbit_from_n(1, p);
  const double period = dynamics::proper_period(p);
  for (auto _ : state) {
    auto w = dynamics::integrate_worldline(dynamics::initial_on_orbit(orbit), p, 10 * period, period / 1000);
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_IntegrateWorldline)->Unit(benchmark::kMillisecond);

void BM_KgResidual(benchmark::State& state) {
  const auto p = weak_field();
  const auto mode = modes::make_mode({1, static_cast<int>(state.range(0)), 0.0}, p);
  const auto grid = numerics::default_grid(mode);
  numerics::Field field = [mode](const modes::SpacetimePoint& q) { return modes::evaluate_mode(mode, q); };
  for (auto _ : state) benchmark::DoNotOptimize(numerics::kg_residual(field, p, grid, 0.0));
}
BENCHMARK(BM_KgResidual)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_LandauMatchReport(benchmark::State& state) {
  const auto p = weak_field();
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(transparency::landau_match_report(n_max, p));
}
BENCHMARK(BM_LandauMatchReport)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
