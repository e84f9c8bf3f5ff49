#include <benchmark/benchmark.h>

#include "elastiq/fields.hpp"
#include "elastiq/geometry.hpp"

using namespace elastiq;

namespace {

DisplacementField sample_field() {
  return DisplacementField::make_real(
      {FourierMode(Vec3(0.8, 0.5, 1),
                   CVec3(Complex(0, 0.01), Complex(0.01, 0), Complex(0.005, 0)))});
}

}  // namespace

static void BM_RiemannAtPoint(benchmark::State& state) {
  const DisplacementField u = sample_field();
  const MetricField m = metric_field_of(u, 1e-3);
  VecX p(3);
  p << 0.2, -0.1, 0.3;
  for (auto _ : state) {
    auto rep = riemann(m, p);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_RiemannAtPoint);

static void BM_CompatibilityGrid(benchmark::State& state) {
  const DisplacementField u = sample_field();
  std::vector<Point3> grid;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) grid.emplace_back(0.1 * i, 0.1 * j, 0.0);
  for (auto _ : state) {
    double r = compatibility_check(u, grid, 1e-2);
    benchmark::DoNotOptimize(r);
  }
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_CompatibilityGrid)->Range(2, 8)->Complexity();

BENCHMARK_MAIN();
