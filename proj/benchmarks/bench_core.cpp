#include <benchmark/benchmark.h>

#include "kelly/canonical.hpp"
#include "kelly/elimination.hpp"
#include "kelly/extractor.hpp"
#include "kelly/game.hpp"
#include "kelly/genlab.hpp"
#include "kelly/minor_oracle.hpp"

using namespace kelly;

namespace {

void BM_exact_kelly_width(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Digraph g = random_digraph(n, 0.3, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(exact_kelly_width(g, 20).width);
}
BENCHMARK(BM_exact_kelly_width)->Arg(10)->Arg(14)->Arg(16);

void BM_canonical_form(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Digraph g = random_digraph(n, 0.4, 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_form(g).bytes.size());
}
BENCHMARK(BM_canonical_form)->Arg(6)->Arg(8)->Arg(10);

void BM_contains_obstruction_sparse(benchmark::State& state) {
    // A partial 1-DAG: the negative verdict has to exhaust the minor space.
    Digraph g = generate_partial_kdag(static_cast<int>(state.range(0)), 1, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(contains_any_obstruction(g).found);
}
BENCHMARK(BM_contains_obstruction_sparse)->Arg(5)->Arg(6)->Arg(7);

void BM_min_cops(benchmark::State& state) {
    Digraph g = random_digraph(static_cast<int>(state.range(0)), 0.35, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(min_cops(g));
}
BENCHMARK(BM_min_cops)->Arg(5)->Arg(6)->Arg(7);

void BM_extract(benchmark::State& state) {
    Digraph g = random_min_out_degree_2(static_cast<int>(state.range(0)), 17);
    for (auto _ : state)
        benchmark::DoNotOptimize(extract(g).steps.size());
}
BENCHMARK(BM_extract)->Arg(8)->Arg(12)->Arg(16);

void BM_recognize_partial_1(benchmark::State& state) {
    Digraph g = generate_partial_kdag(static_cast<int>(state.range(0)), 1, 23);
    for (auto _ : state)
        benchmark::DoNotOptimize(recognize_partial_k(g, 1).recognized);
}
BENCHMARK(BM_recognize_partial_1)->Arg(8)->Arg(12)->Arg(16);

} // namespace

BENCHMARK_MAIN();
