#include <benchmark/benchmark.h>

#include "gosa/benchmarks.hpp"
#include "gosa/dfo.hpp"
#include "gosa/linprog.hpp"

static void LpSolveSmall(benchmark::State& state) {
    // Shape of a typical trust-region subproblem: d variables, m rows.
    const Eigen::Index d = state.range(0);
    gosa::LpProblem lp;
    lp.c = Eigen::VectorXd::LinSpaced(d, -1.0, 1.0);
    lp.A = Eigen::MatrixXd::Ones(5, d);
    lp.b = Eigen::VectorXd::Constant(5, 0.5);
    lp.lo = Eigen::VectorXd::Constant(d, -1.0);
    lp.hi = Eigen::VectorXd::Constant(d, 1.0);
    for (auto _ : state) {
        auto r = gosa::lp_solve(lp);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(LpSolveSmall)->Arg(2)->Arg(4)->Arg(8);

static void DfoGtcd(benchmark::State& state) {
    const auto problem = gosa::benchmarks::gtcd();
    Eigen::VectorXd x0(4);
    x0 << 35.0, 5.0, 35.0, 30.0;
    gosa::DfoOptions options;
    options.budget = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto rec = gosa::dfo_minimize(problem, x0, options);
        benchmark::DoNotOptimize(rec.f_final);
    }
}
BENCHMARK(DfoGtcd)->Arg(100)->Arg(500);

static void DfoWb4(benchmark::State& state) {
    const auto problem = gosa::benchmarks::wb4();
    Eigen::VectorXd x0(4);
    x0 << 5.0, 5.0, 5.0, 5.0;
    for (auto _ : state) {
        auto rec = gosa::dfo_minimize(problem, x0);
        benchmark::DoNotOptimize(rec.f_final);
    }
}
BENCHMARK(DfoWb4);

BENCHMARK_MAIN();
