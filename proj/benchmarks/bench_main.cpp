#include <benchmark/benchmark.h>

#include "ruij/double_sine.hpp"
#include "ruij/inequalities.hpp"
#include "ruij/integrals.hpp"
#include "ruij/kernels.hpp"
#include "ruij/wavefunction.hpp"

using namespace ruij;

static void BM_DoubleSine(benchmark::State& state)
{
    const Periods w{0.3, 1.0};
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s2(cplx(0.4 + 1e-3 * t, 0.7), w));
        t += 1.0;
    }
}
BENCHMARK(BM_DoubleSine);

static void BM_Kernel(benchmark::State& state)
{
    const KernelContext ctx(complex_set());
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_K(0.37 + 1e-3 * t, ctx));
        t += 1.0;
    }
}
BENCHMARK(BM_Kernel);

static void BM_PsiTwoParticles(benchmark::State& state)
{
    const KernelContext ctx(real_asymm());
    const auto q = default_psi_spec(2);
    for (auto _ : state) benchmark::DoNotOptimize(psi(real_tuple({0.2, -0.1}), real_tuple({0.4, 0.0}), ctx, q));
}
BENCHMARK(BM_PsiTwoParticles)->Unit(benchmark::kMillisecond);

static void BM_KernelFourier(benchmark::State& state)
{
    const KernelContext ctx(real_symm());
    const QuadratureSpec q;
    for (auto _ : state) benchmark::DoNotOptimize(kernel_fourier(0.3, ctx, q));
}
BENCHMARK(BM_KernelFourier)->Unit(benchmark::kMillisecond);

static void BM_IntegralI2(benchmark::State& state)
{
    const KernelContext ctx(real_asymm());
    QuadratureSpec q;
    q.tolerance = 1e-7;
    const double s = 0.2 * ctx.params().nu_g;
    const Tuple gamma = real_tuple({0.1, -0.2});
    const Tuple lambda{cplx(0.3, s), cplx(-0.1, s), cplx(0.05, s)};
    for (auto _ : state) benchmark::DoNotOptimize(integral_I(gamma, lambda, 0.2, ctx, q));
}
BENCHMARK(BM_IntegralI2)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_InequalityS(benchmark::State& state)
{
    InequalityRun run;
    run.n = int(state.range(0));
    run.samples = 10000;
    for (auto _ : state) benchmark::DoNotOptimize(check_S_bound(run, 1.0));
    state.SetItemsProcessed(state.iterations() * run.samples);
}
BENCHMARK(BM_InequalityS)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
