#include <benchmark/benchmark.h>

#include <random>

#include "peierls/barrier.hpp"
#include "peierls/potential.hpp"

using namespace peierls;

namespace {

void BM_BandedSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int r = 2;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    CyclicBanded a(n, r);
    for (int i = 0; i < n; ++i) {
        a.add(i, i, 8.0 + unit(rng));
        for (int d = 1; d <= r; ++d) a.add(i, (i + d) % n, unit(rng));
    }
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b(i) = unit(rng);
    CyclicBandedSolver solver;
    for (auto _ : state) {
        solver.factorize(a, 0.1);
        benchmark::DoNotOptimize(solver.solve(b));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_BandedSolve)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_MinimizePeriodic(benchmark::State& state) {
    const TwistGeneratingFunction pot(1.5);
    const long long p = state.range(0);
    const long long q = (p * 13) / 21 + 1;  // near-golden slope, coprime often enough
    for (auto _ : state)
        benchmark::DoNotOptimize(minimize_periodic(pot, p, q, {}));
}
BENCHMARK(BM_MinimizePeriodic)->Arg(21)->Arg(89)->Arg(377);

void BM_BarrierProfile(benchmark::State& state) {
    const TwistGeneratingFunction pot(1.5);
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(barrier_profile(pot, Rational(21, 13), grid, {}));
}
BENCHMARK(BM_BarrierProfile)->Arg(16)->Arg(64);

} // namespace

BENCHMARK_MAIN();
