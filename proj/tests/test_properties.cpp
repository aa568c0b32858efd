#include <doctest.h>

#include "properties/properties.hpp"
#include "repalign/bridge.hpp"

using namespace repalign;

namespace {

void require_clean(const props::Tally& t) {
    INFO("first failure: " << t.first_failure);
    CHECK(t.cases > 0);
    CHECK(t.failures == 0);
}

} // namespace

TEST_CASE("field axioms") {
    for (const auto& d : {Domain::prime_field(2), Domain::prime_field(5), Domain::prime_field(65537),
                          Domain::prime_field(2305843009213693951ULL), Domain::rational()}) {
        require_clean(props::field_axioms(d, 250, 3));
    }
}

TEST_CASE("rank is invariant under changes of basis") { require_clean(props::rank_basis_invariance(60, 5)); }

TEST_CASE("float and rational ranks agree on integer matrices") {
    require_clean(props::float_rational_rank(50, 8, 1e-9));
}

TEST_CASE("decode from every k-subset") {
    require_clean(props::mds_round_trip(4, 2, 5, 2));
    require_clean(props::mds_round_trip(5, 3, 5, 3));
}

TEST_CASE("reconstruction returns the lost piece") { require_clean(props::reconstruct_equals_original(12, 4)); }

TEST_CASE("rank-vector norms and bound sandwiches on random strategies") {
    Sampler s(77);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const std::size_t k = 2 + seed % 2;
        const auto code = generate_random_code(k + 2, k, 1, Domain::rational(), seed);
        const std::size_t i = 1 + seed % k;
        std::vector<Matrix> mats{s.matrix(code.domain(), 2, 1), s.matrix(code.domain(), 2, 1)};
        const RepairStrategy strat(i, mats);
        const auto rep = evaluate_repair(code, strat);
        if (!rep.feasible) continue;
        std::size_t mx = 0;
        for (auto r : rep.interference_ranks) mx = std::max(mx, r);
        CHECK(mx <= rep.interference_sum());
        CHECK(rep.interference_sum() <= (k - 1) * mx);
        const auto eta = sdof(code_to_channel(code, i).channel, mats).eta;
        const auto b3 = lemma3_bounds(k, rep.overhead);
        CHECK(b3.low <= eta);
        CHECK(eta <= b3.high);
        const auto b5 = lemma5_bounds(k, eta);
        CHECK(b5.low <= rep.overhead);
        CHECK(rep.overhead <= b5.high);
    }
}
