#include <benchmark/benchmark.h>

#include <cmath>

#include "ese/harnack.hpp"
#include "ese/integrate.hpp"

namespace {

ese::Field gaussian(int dim, std::size_t points) {
  const auto grid = ese::Grid::cube(dim, points, {-4.0, 4.0}, ese::Boundary::periodic);
  return ese::initial_field(ese::InitialData::gaussian(1.0, 0.5), grid);
}

void BM_Laplacian(benchmark::State& state) {
  const auto f = gaussian(static_cast<int>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(ese::laplacian(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_Laplacian)->Args({1, 4096})->Args({2, 256})->Args({3, 64});

void BM_Rk4Step(benchmark::State& state) {
  const auto f = gaussian(static_cast<int>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const double dt = ese::stable_dt(f.grid(), f.max(), 2.0, ese::StepConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(ese::step(f, 0.0, dt, 2.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_Rk4Step)->Args({1, 4096})->Args({2, 256});

void BM_HarnackH0(benchmark::State& state) {
  const auto f = gaussian(static_cast<int>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto u = ese::log_field(f);
  const auto k = ese::preset("dim2").constants;
  for (auto _ : state) benchmark::DoNotOptimize(ese::harnack_h0(u, 0.5, k, 2.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_HarnackH0)->Args({1, 4096})->Args({2, 256});

void BM_Solve1D(benchmark::State& state) {
  ese::ProblemSpec prob;
  prob.grid = ese::Grid::cube(1, static_cast<std::size_t>(state.range(0)), {-4.0, 4.0}, ese::Boundary::periodic);
  prob.initial = ese::InitialData::gaussian(1.0, 0.2);
  prob.t_end = 100.0;
  ese::StepConfig cfg;
  cfg.sample_stride = 100;
  for (auto _ : state) benchmark::DoNotOptimize(ese::solve(prob, cfg));
}
BENCHMARK(BM_Solve1D)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
