#include <benchmark/benchmark.h>

#include "repalign/constructions.hpp"

using namespace repalign;

namespace {

void BM_SymbolExtension(benchmark::State& state) {
    const auto delta = static_cast<std::size_t>(state.range(0));
    const auto chan =
        generate_random_channel(2, delta * delta, 2, Domain::rational(), 1, ChannelStructure::diagonal);
    for (auto _ : state) benchmark::DoNotOptimize(sdof(chan, symbol_extension_beamforming(chan, delta, 1)));
}

void BM_SymbolExtensionPrime(benchmark::State& state) {
    const auto delta = static_cast<std::size_t>(state.range(0));
    const auto chan = generate_random_channel(2, delta * delta, 2, Domain::prime_field(2305843009213693951ULL), 1,
                                              ChannelStructure::diagonal);
    for (auto _ : state) benchmark::DoNotOptimize(sdof(chan, symbol_extension_beamforming(chan, delta, 1)));
}

} // namespace

BENCHMARK(BM_SymbolExtension)->DenseRange(1, 3);
BENCHMARK(BM_SymbolExtensionPrime)->DenseRange(1, 4);
