#include "kbg/descriptor.hpp"
#include "kbg/heat.hpp"
#include "kbg/k_engine.hpp"
#include "kbg/simplicial.hpp"
#include "kbg/smith.hpp"
#include "kbg/toeplitz.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>

using namespace kbg;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t dim) {
    std::uniform_int_distribution<int> entry(-9, 9);
    IntMatrix a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) a(i, j) = entry(rng);
    return a;
}

void BM_SmithRandom(benchmark::State& state) {
    std::mt19937 rng(42);
    const std::size_t dim = static_cast<std::size_t>(state.range(0));
    IntMatrix a = random_matrix(rng, dim);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}

void BM_ComputeKBruhat(benchmark::State& state) {
    GroupoidDescriptor d = make_bruhat_cp_n(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_k(d));
}

void BM_ToeplitzIndex(benchmark::State& state) {
    ToeplitzSymbol sym = ToeplitzSymbol::power(3);
    const int truncation = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(toeplitz_index(sym, truncation));
}

void BM_McKeanSingerTorus(benchmark::State& state) {
    HeatModel model =
        hodge_even_odd_operator(load_complex(std::string(KBG_DATA_DIR) + "/torus_7x7.cplx"));
    for (auto _ : state) benchmark::DoNotOptimize(mckean_singer_index(model, {0.1, 1.0, 10.0}));
}

} // namespace

BENCHMARK(BM_SmithRandom)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_ComputeKBruhat)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_ToeplitzIndex)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_McKeanSingerTorus);

BENCHMARK_MAIN();
