#include "nlh/ground_state.hpp"
#include "nlh/mode_operator.hpp"
#include "nlh/potential.hpp"

#include <benchmark/benchmark.h>

using namespace nlh;

namespace {

const RadialGrid& grid_for(int n) {
    static std::map<int, std::unique_ptr<RadialGrid>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<RadialGrid>(n, 1.0);
    return *slot;
}

void BM_PrefixApply(benchmark::State& state) {
    const RadialGrid& g = grid_for((int)state.range(0));
    ModeKernel kern(g, 0);
    RadialFunction q = sample(g, eval_omega_squared);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kern.apply_vector(q.values));
    }
}

void BM_DenseApply(benchmark::State& state) {
    const RadialGrid& g = grid_for((int)state.range(0));
    ModeKernel kern(g, 0);
    const MatrixXd& M = kern.dense_matrix();
    RadialFunction q = sample(g, eval_omega_squared);
    VectorXd out(g.n());
    for (auto _ : state) {
        out.noalias() = M * q.values;
        benchmark::DoNotOptimize(out);
    }
}

void BM_AssembleOperator(benchmark::State& state) {
    const RadialGrid& g = grid_for((int)state.range(0));
    for (auto _ : state) {
        ModeOperator op(g, 1);
        benchmark::DoNotOptimize(op.a_total().data());
    }
}

} // namespace

BENCHMARK(BM_PrefixApply)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_DenseApply)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_AssembleOperator)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
