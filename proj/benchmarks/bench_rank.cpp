#include <benchmark/benchmark.h>

#include "repalign/linalg.hpp"
#include "repalign/random.hpp"

using namespace repalign;

namespace {

void rank_in(benchmark::State& state, const Domain& d) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Sampler s(1);
    const Matrix m = s.matrix(d, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
    state.SetComplexityN(state.range(0));
}

void BM_RankPrime(benchmark::State& state) { rank_in(state, Domain::prime_field(65537)); }
void BM_RankRational(benchmark::State& state) { rank_in(state, Domain::rational()); }
void BM_RankFloat(benchmark::State& state) { rank_in(state, Domain::floating()); }

} // namespace

BENCHMARK(BM_RankPrime)->RangeMultiplier(2)->Range(4, 64)->Complexity();
BENCHMARK(BM_RankRational)->RangeMultiplier(2)->Range(4, 32)->Complexity();
BENCHMARK(BM_RankFloat)->RangeMultiplier(2)->Range(4, 64)->Complexity();
