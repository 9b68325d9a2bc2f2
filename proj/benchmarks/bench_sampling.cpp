#include <benchmark/benchmark.h>

#include "gosa/benchmarks.hpp"
#include "gosa/sampling.hpp"

static void UniformSample(benchmark::State& state) {
    const auto problem = gosa::benchmarks::gtcd();
    for (auto _ : state) {
        auto X = gosa::uniform_sample(problem.domain, state.range(0), gosa::Seed{5, 0});
        benchmark::DoNotOptimize(X.data());
    }
}
BENCHMARK(UniformSample)->Arg(10000)->Arg(50000);

static void LhsMaximin(benchmark::State& state) {
    const auto problem = gosa::benchmarks::gtcd();
    for (auto _ : state) {
        auto X = gosa::lhs_maximin(problem.domain, 100, gosa::Seed{6, 0},
                                   static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(X.data());
    }
}
BENCHMARK(LhsMaximin)->Arg(0)->Arg(500)->Arg(1000);

static void QuantileOrderStatistic(benchmark::State& state) {
    gosa::Rng rng(gosa::Seed{7, 0});
    Eigen::VectorXd v(state.range(0));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(0.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gosa::empirical_quantile(v, 0.1));
    }
}
BENCHMARK(QuantileOrderStatistic)->Arg(10000)->Arg(100000);
