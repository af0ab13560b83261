#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "degen/scheme.hpp"
#include "degen/time_integration.hpp"

namespace {

using namespace degen;

GridFunction sine_data(std::size_t n) {
  return cell_average_init([](double x) { return std::sin(x); }, Grid1D(-std::numbers::pi / 2, std::numbers::pi, n));
}

void BM_SpatialRhs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SchemeState s(sine_data(n), BoundaryCondition::ZeroDiffusiveFlux);
  const SpatialOperator op(FluxSpec::burgers(), DiffusionSpec::positive_part_quadratic(), {-1, 1});
  SchemeWorkspace ws;
  ws.resize(n);
  std::vector<double> rhs(n);
  for (auto _ : state) {
    op.evaluate(s.values(), s.grid().dx(), ws, rhs);
    benchmark::DoNotOptimize(rhs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpatialRhs)->RangeMultiplier(4)->Range(100, 6400);

void BM_SpatialRhsQuadratureFlux(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bool cached = state.range(1) != 0;
  EOFluxOptions opts;
  if (cached) opts.cache_spacing = 1e-4;
  const SchemeState s(sine_data(n), BoundaryCondition::Periodic);
  const SpatialOperator op(FluxSpec::sine(), DiffusionSpec::zero(), {-1, 1}, opts);
  SchemeWorkspace ws;
  ws.resize(n);
  std::vector<double> rhs(n);
  for (auto _ : state) {
    op.evaluate(s.values(), s.grid().dx(), ws, rhs);
    benchmark::DoNotOptimize(rhs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpatialRhsQuadratureFlux)->Args({400, 0})->Args({400, 1});

void BM_IntegrateTable1(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Problem p{FluxSpec::zero(), DiffusionSpec::positive_part_quadratic(), BoundaryCondition::ZeroDiffusiveFlux,
                  [](double x) { return std::sin(x); }, Grid1D(-std::numbers::pi / 2, std::numbers::pi, n), 0.1};
  const double times[] = {0.1};
  std::size_t steps = 0;
  for (auto _ : state) {
    const Trajectory t = integrate(p, TimeStepper{}, times);
    steps = t.ledger.size() - 1;
    benchmark::DoNotOptimize(t.snapshots.back().values().data());
  }
  state.counters["steps"] = static_cast<double>(steps);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(steps) * state.range(0));
}
BENCHMARK(BM_IntegrateTable1)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
