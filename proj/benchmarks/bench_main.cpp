#include <benchmark/benchmark.h>

#include <cmath>

#include "phasewave/discrete.hpp"
#include "phasewave/lattice.hpp"
#include "phasewave/spectral.hpp"
#include "phasewave/steady.hpp"

namespace {

using namespace phasewave;

LatticeConfig lattice_cfg(int n, double P, double eps) {
  LatticeConfig cfg;
  cfg.n = n;
  cfg.P = P;
  cfg.eps = eps;
  return cfg;
}

void BM_RungeKuttaStep(benchmark::State& state) {
  const LatticeConfig cfg = lattice_cfg(static_cast<int>(state.range(0)), 0.4, 0.1);
  LatticeState s = sine_mode_state(cfg, 1, 1e-3);
  const double dt = default_time_step(cfg, s);
  for (auto _ : state) {
    s = step(cfg, s, dt);
    benchmark::DoNotOptimize(s.u.data());
  }
}
BENCHMARK(BM_RungeKuttaStep)->Arg(16)->Arg(64)->Arg(256);

void BM_UniphaseSpectrumWithOracle(benchmark::State& state) {
  const LatticeConfig cfg = lattice_cfg(static_cast<int>(state.range(0)), 0.4, 0.05);
  for (auto _ : state) {
    const SpectrumReport report = uniphase_spectrum(cfg, cfg.P);
    benchmark::DoNotOptimize(report.max_discrepancy);
  }
}
BENCHMARK(BM_UniphaseSpectrumWithOracle)->Arg(8)->Arg(16)->Arg(32);

void BM_DenseEigenvalues(benchmark::State& state) {
  const LatticeConfig cfg = lattice_cfg(static_cast<int>(state.range(0)), 1.0, 0.05);
  const Eigen::MatrixXd J = jacobian(cfg, uniphase(cfg));
  for (auto _ : state) {
    const EigenResult result = dense_eigenvalues(J);
    benchmark::DoNotOptimize(result.values.data());
  }
}
BENCHMARK(BM_DenseEigenvalues)->Arg(8)->Arg(16)->Arg(32);

void BM_EnumerateTwoPhase(benchmark::State& state) {
  const LatticeConfig cfg = lattice_cfg(static_cast<int>(state.range(0)), 1.0, 0.0);
  for (auto _ : state) {
    const Enumeration families = enumerate_two_phase(cfg, 32);
    benchmark::DoNotOptimize(families.solutions.size());
  }
}
BENCHMARK(BM_EnumerateTwoPhase)->Arg(4)->Arg(8)->Arg(12);

void BM_DiscreteStep(benchmark::State& state) {
  SchemeGrid grid;
  grid.n = static_cast<int>(state.range(0));
  grid.h2 = 0.25;
  grid.eps = 0.1;
  grid.P = 0.4;
  DiscreteState s = discrete_sine_state(grid, 1, 1e-4);
  for (auto _ : state) {
    s = discrete_step(grid, s);
    benchmark::DoNotOptimize(s.u_curr.data());
  }
}
BENCHMARK(BM_DiscreteStep)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
