#include <benchmark/benchmark.h>

#include "elastiq/quantization.hpp"

using namespace elastiq;

static void BM_AssembleModeHamiltonian(benchmark::State& state) {
  const LameParameters lam(1.3, 0.1);
  for (auto _ : state) {
    auto h = assemble_mode_hamiltonian(lam, 1.7, 2);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_AssembleModeHamiltonian);

static void BM_BogoliubovDiagonalize(benchmark::State& state) {
  const LameParameters lam(1.3, 0.1);
  const auto h = assemble_mode_hamiltonian(lam, 1.7, 2);
  for (auto _ : state) {
    auto r = bogoliubov_diagonalize(h);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_BogoliubovDiagonalize);

static void BM_DispersionSweep(benchmark::State& state) {
  const LameParameters lam(1.3, 0.1);
  std::vector<double> q2(state.range(0));
  for (int i = 0; i < state.range(0); ++i) q2[i] = 0.1 + 0.05 * i;
  const std::vector<int> q3 = {0, 1, 2, 3};
  for (auto _ : state) {
    auto rows = dispersion_sweep(lam, q2, q3);
    benchmark::DoNotOptimize(rows);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DispersionSweep)->Range(8, 256)->Complexity();
