#include "starlab/functional.hpp"
#include "starlab/psd.hpp"

#include <benchmark/benchmark.h>

using namespace starlab;

namespace {

void gram_args(benchmark::internal::Benchmark *b)
{
    b->Args({2, 2})->Args({3, 3})->Args({4, 4});
}

void BM_gram_parallel(benchmark::State &state)
{
    const Space c1{Chart::complex, 1};
    const int d = static_cast<int>(state.range(0));
    const int order = static_cast<int>(state.range(1));
    const Functional w = Functional::smoothed_delta(c1, Rational(1, 4));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram_matrix(w, BidiffGenerator::wick(1), d, order));
    }
}

void BM_gram_serial(benchmark::State &state)
{
    const Space c1{Chart::complex, 1};
    const int d = static_cast<int>(state.range(0));
    const int order = static_cast<int>(state.range(1));
    const Functional w = Functional::smoothed_delta(c1, Rational(1, 4));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram_matrix_serial(w, BidiffGenerator::wick(1), d, order));
    }
}

struct BatchInput {
    SeriesMatrix g;
    std::vector<SeriesVector> vs;
};

BatchInput batch_input(std::size_t count)
{
    const Space c1{Chart::complex, 1};
    const GramForm form = gram_matrix_serial(Functional::delta_origin(c1), BidiffGenerator::wick(1), 3, 3);
    return {form.entries, random_vectors(form.basis.size(), 3, count, 17)};
}

void BM_batch_parallel(benchmark::State &state)
{
    const BatchInput in = batch_input(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(quadratic_form_batch(in.g, in.vs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_batch_serial(benchmark::State &state)
{
    const BatchInput in = batch_input(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(quadratic_form_batch_serial(in.g, in.vs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_gram_parallel)->Apply(gram_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_gram_serial)->Apply(gram_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_batch_parallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_batch_serial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
