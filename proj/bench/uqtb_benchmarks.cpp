// Serial reference loop against the OpenMP loop for the parallel studies.

#include <benchmark/benchmark.h>

#include <vector>

#include "uqtb/bench.h"

namespace {

using namespace uqtb;

Execution execution(const benchmark::State& state)
{
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state)
{
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void collided_plane_batch(benchmark::State& state)
{
  std::vector<double> c(16);
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = 0.5 + 0.05 * static_cast<double>(k);
  std::vector<double> out(c.size());
  for (auto _ : state) {
    collided_plane({1.5, 5.0}, c, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(collided_plane_batch);

void quantiles(benchmark::State& state)
{
  const ChaosExpansion exp =
    expand(SourceConfig::plane_pulse(), 0.0, 5.0, UncertainScatteringRatio(1.1, 0.275), 8);
  const std::vector<double> grid{0.05, 0.25, 0.5, 0.75, 0.95};
  for (auto _ : state)
    benchmark::DoNotOptimize(
      empirical_quantiles(exp, 1'000'000, grid, execution(state)));
  label(state);
}
BENCHMARK(quantiles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void plane_profiles(benchmark::State& state)
{
  StudyConfig cfg = StudyConfig::profiles();
  cfg.grid_points = 41;
  cfg.n_samples = 100'000;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_profiles(cfg, execution(state)));
  label(state);
}
BENCHMARK(plane_profiles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void variance_convergence(benchmark::State& state)
{
  StudyConfig cfg = StudyConfig::variance_convergence();
  cfg.grid_points = 51;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_variance_convergence(cfg, execution(state)));
  label(state);
}
BENCHMARK(variance_convergence)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void mass_study(benchmark::State& state)
{
  StudyConfig cfg = StudyConfig::mass_vs_cbar();
  cfg.n_samples = 100'000;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_mass_study(cfg, execution(state)));
  label(state);
}
BENCHMARK(mass_study)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void square_profile_point(benchmark::State& state)
{
  StudyConfig cfg = StudyConfig::profiles(SourceConfig::square());
  cfg.times = {1.0};
  cfg.spatial_grid = {0.0, 0.6, 1.2};
  cfg.n_samples = 1'000;
  cfg.check_aliasing = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_profiles(cfg, execution(state)));
  label(state);
}
BENCHMARK(square_profile_point)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
