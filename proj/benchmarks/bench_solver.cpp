#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mlb/mlb.hpp"

namespace {

mlb::SpeciesSet two_species(double m1) {
  return mlb::SpeciesSet({{m1, 1.0, 1.0, "1"}, {1.0, 1.0, 1.0, "2"}}, 1.0, 1.0);
}

mlb::KineticState initial_state(int cells, double m1) {
  const mlb::VelocityGrid grid(4.0, cells);
  mlb::DistributionSet d(grid, {mlb::maxwellian(1.0, 0.5, 0.25, grid), mlb::maxwellian(1.0, -0.25, 0.125, grid)});
  return mlb::make_initial_state(std::move(d), std::vector<double>{m1, 1.0});
}

void BM_Thomas(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> sub(n - 1), super(n - 1), diag(n), rhs(n);
  for (auto& x : sub) x = u(rng);
  for (auto& x : super) x = u(rng);
  for (auto& x : diag) x = 3.0 + u(rng);
  for (auto& x : rhs) x = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(mlb::solve_tridiagonal(sub, diag, super, rhs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_Thomas)->RangeMultiplier(4)->Range(64, 16384);

void BM_AssembleFromLog(benchmark::State& state) {
  const mlb::VelocityGrid grid(4.0, static_cast<int>(state.range(0)));
  const auto logm = mlb::log_maxwellian(1.0, 0.1, 0.3, grid);
  for (auto _ : state) benchmark::DoNotOptimize(mlb::assemble_tridiagonal_from_log(logm));
}
BENCHMARK(BM_AssembleFromLog)->RangeMultiplier(4)->Range(64, 16384);

void BM_GstUpdate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<mlb::SpeciesSpec> specs;
  std::vector<double> m, dens, vel, temp;
  for (std::size_t i = 0; i < n; ++i) {
    specs.push_back({0.5 + 3.5 * u(rng), 1.0, 1.0, ""});
    m.push_back(specs.back().mass);
    dens.push_back(1.0);
    vel.push_back(u(rng) - 0.5);
    temp.push_back(0.1 + u(rng));
  }
  const mlb::SpeciesSet species(specs, 1.0, 1.0);
  const auto kappa = mlb::KappaTable::scaled(m, 2.0);
  const auto moments = mlb::MomentSet::from_scalar(m, dens, vel, temp);
  int iterations = 0;
  for (auto _ : state) {
    auto r = mlb::gst_moment_update(moments, species, kappa, 0.2);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r);
  }
  state.counters["gst_iterations"] = iterations;
}
BENCHMARK(BM_GstUpdate)->DenseRange(2, 8, 2);

void BM_FullStep(benchmark::State& state) {
  const auto species = two_species(1.0);
  const auto kappa = mlb::KappaTable::uniform(2, 2.0);
  const auto s0 = initial_state(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mlb::full_step(s0, species, kappa, 0.2));
}
BENCHMARK(BM_FullStep)->RangeMultiplier(2)->Range(80, 2560);

void BM_PresetRun(benchmark::State& state) {
  const double m1 = state.range(0) == 1 ? 1.0 : 2.0;
  const auto species = two_species(m1);
  const auto kappa = mlb::KappaTable::uniform(2, m1 == 1.0 ? 2.0 : 3.0);
  for (auto _ : state) {
    auto s = initial_state(80, m1);
    for (int step = 0; step < 100; ++step) s = mlb::full_step(s, species, kappa, 0.2).state;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_PresetRun)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
