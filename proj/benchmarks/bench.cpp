#include <cmath>
#include <numeric>

#include <benchmark/benchmark.h>

#include "uatk/construct.hpp"
#include "uatk/greedy.hpp"
#include "uatk/jackson.hpp"
#include "uatk/random.hpp"
#include "uatk/rbf.hpp"

using namespace uatk;

static void BM_EvalNet(benchmark::State& state)
{
    const auto terms = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    std::vector<Term> t;
    for (std::size_t j = 0; j < terms; ++j) {
        t.push_back(Term{rng.uniform(-1, 1), {rng.uniform(-3, 3), rng.uniform(-3, 3)}, rng.uniform(-1, 1),
                         Activation::logistic()});
    }
    const ShallowNet net(2, t);
    const std::vector<double> x{0.3, -0.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(net(x));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(terms));
}
BENCHMARK(BM_EvalNet)->Arg(16)->Arg(256)->Arg(4096);

static void BM_CosineNet(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_cosine_net(Activation::logistic(), 3.0 * state.range(0), 0.1));
    }
}
BENCHMARK(BM_CosineNet)->Arg(1)->Arg(4);

static void BM_Greedy(benchmark::State& state)
{
    const auto m = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    auto grid = Grid::make(Box::interval(0, 1), {257});
    std::vector<std::vector<double>> atoms(m, std::vector<double>(grid->size()));
    for (auto& a : atoms) {
        for (auto& v : a) {
            v = rng.uniform();
        }
    }
    const Dictionary d(grid, atoms);
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto target = ConvexTarget::uniform(d, idx);
    for (auto _ : state) {
        switch (state.range(1)) {
        case 0: benchmark::DoNotOptimize(maurey_greedy(target, d, 64)); break;
        case 1: benchmark::DoNotOptimize(ks_greedy(target, d, 64)); break;
        default: benchmark::DoNotOptimize(ddgs_greedy(target, d, 3.0, 64)); break;
        }
    }
}
BENCHMARK(BM_Greedy)->ArgsProduct({{32, 128}, {0, 1, 2}})->ArgNames({"atoms", "algo"});

static void BM_SmoothingOperator(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const PeriodicFn f = [](double x) { return std::abs(std::sin(x)); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_smoothing_operator(f, n, 2));
    }
}
BENCHMARK(BM_SmoothingOperator)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_RbfBuild(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const ScalarField bump = [](std::span<const double> x) {
        return std::max(0.0, 1.0 - x[0] * x[0] - x[1] * x[1]);
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_rbf_net(RbfKernel::gaussian(), bump, 2, 1.0, 0.1, n));
    }
}
BENCHMARK(BM_RbfBuild)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
