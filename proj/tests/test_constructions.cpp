#include <doctest.h>

#include "repalign/bridge.hpp"
#include "repalign/constructions.hpp"
#include "repalign/errors.hpp"
#include "repalign/linalg.hpp"

using namespace repalign;

namespace {

const Domain Q = Domain::rational();

} // namespace

TEST_CASE("symbol extension plan enumerates the exponent grid in odometer order") {
    const auto plan = SymbolExtensionPlan::make(2, 2, 3);
    CHECK(plan.N == 9);
    CHECK(plan.side == 18);
    REQUIRE(plan.exponents.size() == 9);
    CHECK(plan.exponents.front() == std::vector<std::size_t>{1, 1});
    CHECK(plan.exponents[1] == std::vector<std::size_t>{1, 2});
    CHECK(plan.exponents[3] == std::vector<std::size_t>{2, 1});
    CHECK(plan.exponents.back() == std::vector<std::size_t>{3, 3});
    const auto k3 = SymbolExtensionPlan::make(2, 3, 2);
    CHECK(k3.N == 16);
    CHECK(k3.exponents[1] == std::vector<std::size_t>{1, 1, 1, 2});
    CHECK_THROWS_AS(SymbolExtensionPlan::make(2, 1, 2), PreconditionError);
}

TEST_CASE("inverse alignment repair collapses interference onto W") {
    const auto code = generate_random_code(4, 2, 1, Q, 3);
    const auto s = inverse_alignment_repair(code, 1, 7);
    const Matrix w = code.block(2, 1) * s.matrix(1);
    for (std::size_t p = 1; p <= 2; ++p) CHECK(code.block(2, p) * s.matrix(p) == w);
    CHECK(interference_rank(code, s, 2) == 1);
    CHECK(repair_overhead(code, s) == Rational(3, 2));
    REQUIRE(s.provenance());
    CHECK(s.provenance()->construction == "inverse-alignment");
    CHECK(s.provenance()->seed == 7);
}

TEST_CASE("inverse alignment repair with beta = 2") {
    const auto code = generate_random_code(6, 2, 2, Q, 5);
    for (std::size_t i = 1; i <= 2; ++i) {
        const auto s = inverse_alignment_repair(code, i, 2);
        CHECK(interference_rank(code, s, 3 - i) == 2);
        CHECK(repair_overhead(code, s) == Rational(5, 4));
    }
}

TEST_CASE("inverse alignment repair preconditions") {
    const auto code3 = generate_random_code(5, 3, 1, Q, 1);
    CHECK_THROWS_AS(inverse_alignment_repair(code3, 1, 1), PreconditionError);
    auto code = generate_random_code(4, 2, 1, Q, 3);
    auto blocks = code.blocks();
    blocks[1][0] = Matrix::from_rows(Q, {{1, 2}, {2, 4}});
    CHECK_THROWS_AS(inverse_alignment_repair(MdsCode(4, 2, 1, Q, blocks), 1, 1), SingularMatrixError);
}

TEST_CASE("inverse alignment beamforming") {
    const auto chan = generate_random_channel(3, 1, 2, Q, 2, ChannelStructure::generic);
    const auto v = inverse_alignment_beamforming(chan, 5);
    const Matrix w = chan.eaves(1, 1) * v.mat(1);
    for (std::size_t l = 1; l <= 3; ++l) CHECK(chan.eaves(1, l) * v.mat(l) == w);
    CHECK(sdof(chan, v).eta == Rational(2, 3));

    auto legit = chan.legit_blocks();
    auto eaves = chan.eaves_blocks();
    eaves[0][0] = Matrix(Q, 3, 3);
    const ChannelInstance planted(3, 1, 2, Q, legit, eaves, ChannelStructure::generic);
    CHECK_THROWS_AS(inverse_alignment_beamforming(planted, 1), SingularMatrixError);
    const auto k3 = generate_random_channel(2, 1, 3, Q, 1, ChannelStructure::generic);
    CHECK_THROWS_AS(inverse_alignment_beamforming(k3, 1), PreconditionError);
}

TEST_CASE("symbol-extension guarantee") {
    CHECK(eq13_guarantee(2, 2, 3) == Rational(1, 9));
    CHECK(eq13_guarantee(2, 2, 1) == 0);
    CHECK(eq13_guarantee(3, 2, 2) == 0);
    for (std::size_t d : {1, 5, 50}) CHECK(eq13_guarantee(1, 2, d) == 0);
    const auto g10 = eq13_guarantee(2, 2, 10);
    const auto g100 = eq13_guarantee(2, 2, 100);
    CHECK(g10 < g100);
    CHECK(g100 < Rational(1, 2));
    CHECK(Rational(1, 2) - g100 < Rational(1, 50));
    CHECK(symbol_extension_min_modulus(2, 2, 3) == 2 * 16 * 18);
}

TEST_CASE("symbol extension, delta = 1, is the single product column") {
    const auto chan = generate_random_channel(2, 1, 2, Q, 4, ChannelStructure::diagonal);
    const auto v = symbol_extension_beamforming(chan, 1, 3);
    REQUIRE(v.mats().size() == 2);
    CHECK(v.mat(1) == v.mat(2));
    CHECK(v.mat(1).cols() == 1);
    Sampler s(3);
    const Matrix w = s.matrix(Q, 2, 1);
    CHECK(v.mat(1) == chan.eaves(1, 1) * chan.eaves(1, 2) * w);
}

TEST_CASE("symbol extension rank bounds at desk scale") {
    for (std::size_t delta : {2, 3}) {
        const std::size_t n = delta * delta;
        const auto chan = generate_random_channel(2, n, 2, Q, 10 + delta, ChannelStructure::diagonal);
        const auto v = symbol_extension_beamforming(chan, delta, 1);
        const auto r = sdof(chan, v);
        CHECK(r.legit_rank == 2 * n);
        CHECK(r.max_eaves_rank >= n);
        CHECK(r.max_eaves_rank <= (delta + 1) * (delta + 1));
        CHECK(r.eta >= eq13_guarantee(2, 2, delta));
    }
}

TEST_CASE("symbol extension with three users") {
    const auto chan = generate_random_channel(3, 8, 2, Q, 4, ChannelStructure::diagonal);
    const auto r = sdof(chan, symbol_extension_beamforming(chan, 2, 2));
    CHECK(eq13_guarantee(3, 2, 2) == 0);
    CHECK(r.eta >= 0);
    CHECK(r.max_eaves_rank <= 27);
}

TEST_CASE("symbol extension preconditions") {
    const auto generic = generate_random_channel(2, 4, 2, Q, 1, ChannelStructure::generic);
    CHECK_THROWS_AS(symbol_extension_beamforming(generic, 2, 1), PreconditionError);
    const auto diag = generate_random_channel(2, 3, 2, Q, 1, ChannelStructure::diagonal);
    CHECK_THROWS_AS(symbol_extension_beamforming(diag, 2, 1), DimensionError);
    const auto small = generate_random_channel(2, 4, 2, Domain::prime_field(101), 1, ChannelStructure::diagonal);
    CHECK_THROWS_AS(symbol_extension_beamforming(small, 2, 1), PreconditionError);
    const auto code = generate_random_code(4, 2, 1, Q, 1);
    CHECK_THROWS_AS(symbol_extension_repair(code, 1, 1, 1), PreconditionError);
}

TEST_CASE("symbol extension repair on diagonal codes") {
    const auto d1 = generate_diagonal_code(4, 2, 1, Q, 2);
    const auto s1 = symbol_extension_repair(d1, 1, 1, 4);
    CHECK(s1.matrix(1) == s1.matrix(2));
    const auto rep1 = evaluate_repair(d1, s1);
    CHECK(rep1.feasible);
    CHECK(rep1.overhead == 2);

    const auto d3 = generate_diagonal_code(4, 2, 9, Q, 3);
    const auto s3 = symbol_extension_repair(d3, 2, 3, 5);
    const auto rep3 = evaluate_repair(d3, s3);
    CHECK(rep3.feasible);
    CHECK(rep3.overhead <= Rational(17, 9));
    CHECK(rep3.overhead >= Rational(3, 2));
    REQUIRE(s3.provenance());
    CHECK(s3.provenance()->delta == std::optional<std::size_t>{3});
}

TEST_CASE("symbol extension is the same construction on both sides") {
    for (std::size_t i : {1, 2}) {
        const auto code = generate_diagonal_code(4, 2, 4, Q, 6);
        const auto mapped = code_to_channel(code, i);
        REQUIRE(mapped.channel.structure() == ChannelStructure::diagonal);
        const auto r = symbol_extension_repair(code, i, 2, 42);
        const auto v = symbol_extension_beamforming(mapped.channel, 2, 42);
        CHECK(r.matrices() == v.mats());
    }
    const auto code3 = generate_diagonal_code(4, 3, 1, Q, 2);
    const auto mapped3 = code_to_channel(code3, 2);
    CHECK(symbol_extension_repair(code3, 2, 1, 9).matrices() == symbol_extension_beamforming(mapped3.channel, 1, 9).mats());
}
