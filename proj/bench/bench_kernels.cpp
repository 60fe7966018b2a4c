#include "fusionkz/associator.hpp"

#include <benchmark/benchmark.h>

using namespace fusionkz;

namespace {

Execution mode(const benchmark::State &state) {
    return state.range(0) ? Execution::parallel : Execution::serial;
}

void bm_connection_matrix(benchmark::State &state) {
    const auto d = build_root_datum("A1");
    const auto v = std::make_shared<const GModule>(defining_module(d));
    const auto l2 = std::make_shared<const GModule>(irreducible(d, {2}));
    const auto sys = std::make_shared<const OmegaSystem>(build_omega_system(v, l2, v, 2));
    AssociatorParams p;
    p.order = 96;
    p.exec = mode(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(connection_matrix(sys, p));
}

void bm_fusion_table(benchmark::State &state) {
    const auto d = build_root_datum("A2");
    for (auto _ : state)
        benchmark::DoNotOptimize(fusion_table(d, 2, mode(state)));
}

void bm_tensor(benchmark::State &state) {
    const auto d = build_root_datum("A2");
    const GModule m = irreducible(d, {1, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(tensor(m, m, mode(state)));
}

} // namespace

BENCHMARK(bm_connection_matrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_fusion_table)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_tensor)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
