#include <benchmark/benchmark.h>

#include "gosa/hsic.hpp"
#include "gosa/kernels.hpp"
#include "gosa/rng.hpp"

namespace {

Eigen::VectorXd random_column(Eigen::Index n, gosa::Seed seed) {
    gosa::Rng rng(seed);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform(-3.0, 3.0);
    return x;
}

} // namespace

static void GramRbf(benchmark::State& state) {
    const auto x = random_column(state.range(0), gosa::Seed{1, 0});
    const auto kernel = gosa::KernelSpec::rbf(0.8);
    for (auto _ : state) {
        auto G = gosa::gram(kernel, x);
        benchmark::DoNotOptimize(G.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(GramRbf)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

static void MedianBandwidth(benchmark::State& state) {
    const auto x = random_column(state.range(0), gosa::Seed{2, 0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(gosa::median_bandwidth(x));
    }
}
BENCHMARK(MedianBandwidth)->Arg(512)->Arg(2000)->Arg(8000);

static void HsicBiased(benchmark::State& state) {
    const auto x = random_column(state.range(0), gosa::Seed{3, 0});
    const auto y = random_column(state.range(0), gosa::Seed{3, 1});
    const auto K = gosa::gram(gosa::KernelSpec::rbf(0.8), x);
    const auto L = gosa::gram(gosa::KernelSpec::rbf(1.1), y);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gosa::hsic_biased(K, L));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(HsicBiased)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

static void HsicItPerInput(benchmark::State& state) {
    const Eigen::Index n = state.range(0);
    gosa::Rng rng(gosa::Seed{4, 0});
    Eigen::MatrixXd X(n, 4);
    std::vector<bool> z(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) X(i, j) = rng.uniform(0.0, 1.0);
        z[static_cast<std::size_t>(i)] = X(i, 0) < 0.25;
    }
    for (auto _ : state) {
        auto result = gosa::hsic_it(X, z);
        benchmark::DoNotOptimize(result.raw.data());
    }
}
BENCHMARK(HsicItPerInput)->Arg(500)->Arg(1000)->Arg(2000);
