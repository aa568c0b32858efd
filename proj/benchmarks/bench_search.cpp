#include <benchmark/benchmark.h>

#include "repalign/bridge.hpp"
#include "repalign/repair.hpp"

using namespace repalign;

namespace {

void BM_ExhaustiveRepair(benchmark::State& state) {
    const auto p = static_cast<std::uint64_t>(state.range(0));
    const auto code = generate_random_code(4, 2, 1, Domain::prime_field(p), 1);
    for (auto _ : state) benchmark::DoNotOptimize(search_optimal_repair(code, 1, ExhaustiveSearch{}));
}

void BM_ExhaustiveRepairThreePieces(benchmark::State& state) {
    const auto code = generate_random_code(5, 3, 1, Domain::prime_field(5), 1);
    SearchOptions opts;
    opts.jobs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(search_optimal_repair(code, 2, ExhaustiveSearch{}, opts));
}

void BM_Theorem1(benchmark::State& state) {
    const auto code = generate_random_code(4, 2, 1, Domain::prime_field(5), 1);
    for (auto _ : state) benchmark::DoNotOptimize(verify_theorem1(code, 1));
}

} // namespace

BENCHMARK(BM_ExhaustiveRepair)->Arg(5)->Arg(7)->Arg(11)->Arg(13);
BENCHMARK(BM_ExhaustiveRepairThreePieces)->Arg(1)->Arg(2);
BENCHMARK(BM_Theorem1);
