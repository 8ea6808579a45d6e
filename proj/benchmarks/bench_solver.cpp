#include <benchmark/benchmark.h>

#include <random>

#include "tradeq/tradeq.hpp"

namespace {

struct Instance {
    tradeq::ImportMatrix imports;
    tradeq::TauMatrix tau;
};

Instance random_instance(tradeq::Index goods, tradeq::Index countries, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> quantity(0.1, 10.0);
    std::uniform_real_distribution<double> share(0.01, 1.0);
    tradeq::Matrix c(goods, countries);
    for (tradeq::Index i = 0; i < c.size(); ++i) c(i) = quantity(rng);
    tradeq::Matrix tau(countries, goods);
    for (tradeq::Index i = 0; i < tau.size(); ++i) tau(i) = share(rng);
    for (tradeq::Index k = 0; k < countries; ++k) tau.row(k) /= tau.row(k).sum();
    return {tradeq::ImportMatrix(std::move(c)), tradeq::normalize_tau(tau)};
}

void BM_SolvePrices(benchmark::State& state) {
    const auto size = static_cast<tradeq::Index>(state.range(0));
    const Instance inst = random_instance(size, size, 7);
    for (auto _ : state) {
        auto solution = tradeq::solve_prices(inst.imports, inst.tau);
        benchmark::DoNotOptimize(solution.lambda);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolvePrices)->RangeMultiplier(2)->Range(2, 64)->Complexity();

void BM_BuildIdealExports(benchmark::State& state) {
    const auto size = static_cast<tradeq::Index>(state.range(0));
    const Instance inst = random_instance(size, size, 11);
    for (auto _ : state) {
        auto exports = tradeq::build_ideal_exports(inst.imports, inst.tau);
        benchmark::DoNotOptimize(exports.values().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildIdealExports)->RangeMultiplier(2)->Range(2, 64)->Complexity();

void BM_CheckIrreducible(benchmark::State& state) {
    const auto size = static_cast<tradeq::Index>(state.range(0));
    // Sparse cycle plus random chords.
    std::mt19937_64 rng(3);
    std::bernoulli_distribution chord(4.0 / static_cast<double>(size));
    tradeq::Matrix m = tradeq::Matrix::Zero(size, size);
    for (tradeq::Index i = 0; i < size; ++i) {
        m(i, (i + 1) % size) = 1.0;
        for (tradeq::Index j = 0; j < size; ++j) {
            if (chord(rng)) m(i, j) = 1.0;
        }
    }
    for (auto _ : state) {
        auto result = tradeq::check_irreducible(m);
        benchmark::DoNotOptimize(result.irreducible);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CheckIrreducible)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
