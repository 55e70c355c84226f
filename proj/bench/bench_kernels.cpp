// Serial reference vs OpenMP for the heavy kernels. Arg 0 is serial, 1 parallel.

#include "spinframe/exchange.hpp"
#include "spinframe/expansion.hpp"
#include "spinframe/spectral.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace spinframe;

namespace {

ComplexField random_field(std::size_t n) {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> nd;
    ComplexField f(n);
    for (auto& v : f) v = {nd(gen), nd(gen)};
    return f;
}

void BM_laplace_beltrami(benchmark::State& state) {
    const int n = static_cast<int>(state.range(1));
    const GridPtr g = make_grid(GridSpec{n, n, n, GammaPeriod::FourPi});
    const SpectralOperators ops(g, state.range(0) != 0);
    const ComplexField f = random_field(g->size());
    for (auto _ : state) benchmark::DoNotOptimize(ops.laplace_beltrami(f));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g->size()));
}
BENCHMARK(BM_laplace_beltrami)->ArgsProduct({{0, 1}, {16, 32}})->Unit(benchmark::kMillisecond);

void BM_wigner_sample(benchmark::State& state) {
    const int n = static_cast<int>(state.range(1));
    const GridPtr g = make_grid(GridSpec{n, n, n, GammaPeriod::FourPi});
    const WignerBasis basis(g, 1, 9, state.range(0) != 0);
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    Eigen::VectorXcd c(static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = {nd(gen), nd(gen)};
    for (auto _ : state) benchmark::DoNotOptimize(basis.sample(c));
}
BENCHMARK(BM_wigner_sample)->ArgsProduct({{0, 1}, {16, 32}})->Unit(benchmark::kMillisecond);

void BM_wigner_project(benchmark::State& state) {
    const GridPtr g = make_grid(GridSpec{24, 24, 24, GammaPeriod::FourPi});
    const WignerBasis basis(g, 1, 9, state.range(0) != 0);
    const ComplexField f = random_field(g->size());
    for (auto _ : state) benchmark::DoNotOptimize(basis.project(f));
}
BENCHMARK(BM_wigner_project)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_symmetrize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(1));
    std::mt19937_64 gen(5);
    std::normal_distribution<double> nd;
    std::vector<Eigen::VectorXcd> states;
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXcd v(4);
        for (int k = 0; k < 4; ++k) v(k) = {nd(gen), nd(gen)};
        states.push_back(v.normalized());
    }
    for (auto _ : state) benchmark::DoNotOptimize(symmetrize(states, SpinLabel(1), 2, state.range(0) != 0));
}
BENCHMARK(BM_symmetrize)->ArgsProduct({{0, 1}, {3, 4, 5}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
