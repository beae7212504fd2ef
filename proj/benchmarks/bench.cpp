#include <benchmark/benchmark.h>

#include <random>

#include "hclust/algorithms.hpp"
#include "hclust/objectives.hpp"
#include "hclust/ultrametric.hpp"

using namespace hclust;

namespace {

DissimilarityMatrix random_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(0.5, 10.5);
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            v[i][j] = v[j][i] = value(rng);
    return DissimilarityMatrix::build(numbered_labels(n), v);
}

void bm_agglomerate(benchmark::State& state) {
    const auto e = static_cast<EstimatorKind>(state.range(1));
    const auto d = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(agglomerate(d, e));
}

void bm_length_cost(benchmark::State& state) {
    const auto d = random_matrix(static_cast<std::size_t>(state.range(0)), 2);
    std::mt19937_64 rng(3);
    const auto t = random_hierarchy(d.labels(), rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(length_cost(t, d, EstimatorKind::mean));
}

void bm_divisive(benchmark::State& state) {
    const auto d = random_matrix(static_cast<std::size_t>(state.range(0)), 4);
    CutSolverPolicy policy;
    for (auto _ : state)
        benchmark::DoNotOptimize(recursive_sparsest_cut(d, policy));
}

void bm_enumeration(benchmark::State& state) {
    const auto d = random_matrix(static_cast<std::size_t>(state.range(0)), 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            optimal_hierarchy_bruteforce(d, EstimatorKind::mean));
}

void bm_ultrametric_reconstruction(benchmark::State& state) {
    const auto d =
        random_ultrametric(static_cast<int>(state.range(0)), 6, 1.0, 9.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(hierarchy_from_ultrametric(d));
}

} // namespace

BENCHMARK(bm_agglomerate)
    ->ArgsProduct({{32, 128, 512},
                   {static_cast<int>(EstimatorKind::mean),
                    static_cast<int>(EstimatorKind::min),
                    static_cast<int>(EstimatorKind::depth_weighted)}});
BENCHMARK(bm_length_cost)->Arg(64)->Arg(256);
BENCHMARK(bm_divisive)->Arg(32)->Arg(128);
BENCHMARK(bm_enumeration)->Arg(6)->Arg(7)->Arg(8);
BENCHMARK(bm_ultrametric_reconstruction)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
