#include <benchmark/benchmark.h>

#include "qudit/metrics.hpp"
#include "qudit/quantize.hpp"

// Serial reference vs OpenMP kernels. The parallel versions are bit-identical
// to the serial ones by construction (fixed accumulation order per output
// element); these benchmarks compare their throughput.

using namespace qudit;

static void bm_compose(benchmark::State& state, Exec exec) {
  Grid g = make_grid(static_cast<int>(state.range(0)));
  OpMat<double> f = dft_matrix<double>(g);
  OpMat<double> q = position_matrix<double>(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose(f, q, exec));
  }
}
BENCHMARK_CAPTURE(bm_compose, serial, Exec::serial)->Arg(101)->Arg(301);
BENCHMARK_CAPTURE(bm_compose, parallel, Exec::parallel)->Arg(101)->Arg(301);

static void bm_cs_quantize(benchmark::State& state, Exec exec) {
  Grid g = make_grid(static_cast<int>(state.range(0)));
  PhaseFunction<double> f(g);
  for (int n = -g.s; n <= g.s; ++n)
    for (int k = -g.s; k <= g.s; ++k) f.at(n, k) = Cx<double>(0.5 * (n * n + k * k));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs_quantize(g, f, exec));
  }
}
BENCHMARK_CAPTURE(bm_cs_quantize, serial, Exec::serial)->Arg(31)->Arg(101);
BENCHMARK_CAPTURE(bm_cs_quantize, parallel, Exec::parallel)->Arg(31)->Arg(101);

static void bm_residual_sweep(benchmark::State& state, bool parallel) {
  Grid g = make_grid(31);
  auto ctx = CanonContext<double>::build(g);
  const int npts = static_cast<int>(state.range(0));
  std::vector<double> out(static_cast<size_t>(npts));
  for (auto _ : state) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int i = 0; i < npts; ++i) {
      double kappa = 0.5 * std::pow(4.0, static_cast<double>(i) / (npts - 1));
      out[static_cast<size_t>(i)] = residual_norm(ctx, discrete_gaussian<double>(g, kappa));
    }
    benchmark::DoNotOptimize(out.data());
  }
  (void)parallel;
}
BENCHMARK_CAPTURE(bm_residual_sweep, serial, false)->Arg(200);
BENCHMARK_CAPTURE(bm_residual_sweep, parallel, true)->Arg(200);

BENCHMARK_MAIN();
