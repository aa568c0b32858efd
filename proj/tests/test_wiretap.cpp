#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/oracles.hpp"
#include "repalign/bridge.hpp"
#include "repalign/constructions.hpp"
#include "repalign/errors.hpp"
#include "repalign/linalg.hpp"
#include "repalign/wiretap.hpp"

using namespace repalign;

namespace {

const Domain Q = Domain::rational();
const Domain F = Domain::floating(1e-9);

std::vector<Matrix> leading_identity(const ChannelInstance& chan) {
    return std::vector<Matrix>(chan.L(), Matrix::identity(chan.domain(), chan.side()).block(0, 0, chan.side(), chan.N()));
}

std::vector<Matrix> to_float(const std::vector<Matrix>& v) {
    std::vector<Matrix> out;
    for (const auto& m : v) out.push_back(m.convert_to(F));
    return out;
}

} // namespace

TEST_CASE("channel generation shapes") {
    const auto chan = generate_random_channel(2, 1, 2, Q, 1, ChannelStructure::generic);
    CHECK(chan.legit_blocks().size() == 2);
    CHECK(chan.eaves_blocks().size() == 1);
    CHECK(chan.legit(1).rows() == 2);
    CHECK(generate_random_channel(2, 1, 2, Q, 1, ChannelStructure::generic) == chan);

    const auto diag = generate_random_channel(2, 4, 2, Q, 3, ChannelStructure::diagonal);
    CHECK(diag.side() == 8);
    for (const auto& m : diag.legit_blocks()) CHECK(m.is_diagonal());
    for (const auto& m : diag.eaves_blocks()[0]) CHECK(m.is_diagonal());

    CHECK_THROWS_AS(generate_random_channel(2, 1, 1, Q, 1, ChannelStructure::generic), PreconditionError);
    CHECK_THROWS_AS(generate_random_channel(0, 1, 2, Q, 1, ChannelStructure::generic), PreconditionError);
    CHECK_THROWS_AS(parse_structure("banded"), FormatError);
}

TEST_CASE("outer bound") {
    CHECK(outer_bound(2) == Rational(1, 2));
    CHECK(outer_bound(1) == 0);
    CHECK(outer_bound(4) == Rational(3, 4));
}

TEST_CASE("unaligned beamforming gives zero S-DoF") {
    const auto chan = generate_random_channel(3, 1, 2, Q, 4, ChannelStructure::generic);
    const auto r = sdof(chan, leading_identity(chan));
    CHECK(r.max_eaves_rank == 3);
    CHECK(r.eta == 0);
    CHECK_FALSE(r.meets_outer_bound);
}

TEST_CASE("inverse alignment meets the outer bound") {
    const auto chan = generate_random_channel(3, 1, 2, Q, 5, ChannelStructure::generic);
    const auto v = inverse_alignment_beamforming(chan, 1);
    const auto r = sdof(chan, v);
    CHECK(r.legit_rank == 3);
    CHECK(r.eaves_ranks == std::vector<std::size_t>{1});
    CHECK(r.eta == Rational(2, 3));
    CHECK(r.meets_outer_bound);

    const auto wide = generate_random_channel(2, 3, 2, Q, 6, ChannelStructure::generic);
    const auto rw = sdof(wide, inverse_alignment_beamforming(wide, 2));
    CHECK(rw.eaves_ranks[0] == 3);
    CHECK(rw.legit_rank == 6);
    CHECK(rw.eta == Rational(1, 2));
}

TEST_CASE("sdof matches the minor oracle") {
    const auto chan = generate_random_channel(2, 1, 3, Domain::prime_field(7), 2, ChannelStructure::generic);
    Sampler s(3);
    for (int t = 0; t < 10; ++t) {
        std::vector<Matrix> v{s.matrix(chan.domain(), 2, 1), s.matrix(chan.domain(), 2, 1)};
        const auto r = sdof(chan, v);
        CHECK(r.legit_rank == oracle::rank(legit_stack(chan, v)));
        for (std::size_t e = 1; e <= 2; ++e) CHECK(r.eaves_ranks[e - 1] == oracle::rank(eaves_stack(chan, v, e)));
    }
}

TEST_CASE("eta range and single-user lower bound") {
    Sampler s(7);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto chan = generate_random_channel(3, 2, 3, Q, seed, ChannelStructure::generic);
        std::vector<Matrix> v;
        for (std::size_t l = 0; l < 3; ++l) v.push_back(s.matrix(Q, 6, 2));
        for (std::size_t e = 1; e <= 2; ++e) {
            for (std::size_t l = 1; l <= 3; ++l) CHECK(rank(chan.eaves(e, l) * v[l - 1]) == 2);
        }
        const auto r = sdof(chan, v);
        CHECK(r.max_eaves_rank >= 2);
        CHECK(r.eta >= 0);
        CHECK(r.eta <= outer_bound(3));
    }
}

TEST_CASE("eta invariances") {
    const auto chan = generate_random_channel(2, 2, 2, Q, 9, ChannelStructure::generic);
    const auto v = inverse_alignment_beamforming(chan, 4);
    const auto base = sdof(chan, v);

    const Matrix t = Matrix::from_rows(Q, {{1, 2}, {3, 5}});
    std::vector<Matrix> mixed;
    for (const auto& m : v.mats()) mixed.push_back(m * t);
    CHECK(sdof(chan, mixed).eta == base.eta);

    Sampler s(1);
    const Matrix g = s.matrix(Q, 4, 4);
    REQUIRE(rank(g) == 4);
    std::vector<Matrix> legit;
    for (const auto& h : chan.legit_blocks()) legit.push_back(g * h);
    const ChannelInstance moved(2, 2, 2, Q, legit, chan.eaves_blocks(), ChannelStructure::generic);
    CHECK(sdof(moved, v).eta == base.eta);
}

TEST_CASE("rational and float S-DoF agree on integer instances") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long long> digit(-9, 9);
    auto ints = [&](std::size_t r, std::size_t c) {
        std::vector<long long> e(r * c);
        for (auto& x : e) x = digit(rng);
        return Matrix::from_integers(Q, r, c, e);
    };
    for (int t = 0; t < 12; ++t) {
        const std::size_t L = 2 + t % 3;
        const std::size_t N = 1 + t % 4;
        if (L * N > 16) continue;
        const std::size_t side = L * N;
        std::vector<Matrix> legit, eaves, v;
        for (std::size_t l = 0; l < L; ++l) {
            legit.push_back(ints(side, side));
            eaves.push_back(ints(side, side));
            v.push_back(ints(side, N));
        }
        if (t % 2 == 0) {
            // plant alignment: users 1 and 2 look identical to the eavesdropper
            eaves[1] = eaves[0];
            v[1] = v[0];
        }
        const ChannelInstance ic(L, N, 2, Q, legit, {eaves}, ChannelStructure::generic);
        const auto exact = sdof(ic, v);
        const auto approx = sdof(ic.convert_to(F), to_float(v));
        CHECK(exact.legit_rank == approx.legit_rank);
        CHECK(exact.eaves_ranks == approx.eaves_ranks);
        CHECK(exact.eta == approx.eta);
    }
}

TEST_CASE("exhaustive beamforming on a mapped (4,2,1) code") {
    const auto code = generate_random_code(4, 2, 1, Domain::prime_field(5), 1);
    const auto mapped = code_to_channel(code, 1);
    const auto best = search_optimal_beamforming(mapped.channel);
    CHECK(best.report.max_eaves_rank == 1);
    CHECK(best.report.eta == Rational(1, 2));
    CHECK(best.candidates == 36);
    const auto truth = oracle::brute_force_repair(code, 1);
    CHECK(truth.min_max == best.report.max_eaves_rank);
}

TEST_CASE("shared legit and eavesdropper matrix forces eaves rank >= N") {
    auto chan = generate_random_channel(2, 1, 2, Domain::prime_field(5), 3, ChannelStructure::generic);
    std::vector<std::vector<Matrix>> eaves{chan.legit_blocks()};
    const ChannelInstance same(2, 1, 2, chan.domain(), chan.legit_blocks(), eaves, ChannelStructure::generic);
    try {
        const auto best = search_optimal_beamforming(same);
        CHECK(best.report.max_eaves_rank >= 1);
        CHECK(best.report.eta == 0);
    } catch (const NoFeasibleSolutionError&) {
    }
}

TEST_CASE("beamforming search guards") {
    const auto chan = generate_random_channel(2, 4, 2, Domain::prime_field(7), 1, ChannelStructure::generic);
    CHECK_THROWS_AS(search_optimal_beamforming(chan), BudgetExceededError);
    const auto q = generate_random_channel(2, 1, 2, Q, 1, ChannelStructure::generic);
    CHECK_THROWS_AS(search_optimal_beamforming(q), PreconditionError);
}

TEST_CASE("secrecy rate: identical receivers leak everything") {
    const auto chan = generate_random_channel(2, 1, 2, F, 3, ChannelStructure::generic);
    std::vector<std::vector<Matrix>> eaves{chan.legit_blocks()};
    const ChannelInstance same(2, 1, 2, F, chan.legit_blocks(), eaves, ChannelStructure::generic);
    const auto v = leading_identity(same);
    CHECK(secrecy_rate(same, v, 100.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("secrecy rate sanity bound at unit SNR") {
    const auto chan = generate_random_channel(3, 1, 2, F, 4, ChannelStructure::generic);
    const auto v = leading_identity(chan);
    const double rate = secrecy_rate(chan, v, 1.0, 1.0);
    CHECK(std::isfinite(rate));
    CHECK(rate >= 0.0);
    double c = 0;
    // largest squared singular value bounded by the Frobenius norm of the stack
    for (const auto& h : chan.legit_blocks()) {
        for (std::size_t r = 0; r < h.rows(); ++r) {
            for (std::size_t col = 0; col < h.cols(); ++col) c += h.approx(r, col) * h.approx(r, col);
        }
    }
    CHECK(rate <= 3.0 / 2.0 * std::log2(1.0 + c));
}

TEST_CASE("secrecy rate guards") {
    const auto chan = generate_random_channel(2, 1, 2, F, 3, ChannelStructure::generic);
    const auto v = leading_identity(chan);
    CHECK_THROWS_AS(secrecy_rate(chan, v, 0.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(secrecy_rate(chan, v, 1.0, -1.0), PreconditionError);
    CHECK_THROWS_AS(empirical_dof(chan, v, 1.0, 1.0), PreconditionError);
    const auto q = generate_random_channel(2, 1, 2, Q, 3, ChannelStructure::generic);
    CHECK_THROWS_AS(secrecy_rate(q, leading_identity(q), 10.0, 1.0), PreconditionError);
}

TEST_CASE("empirical S-DoF: zero configuration and scale invariance") {
    const auto chan = generate_random_channel(3, 1, 2, F, 8, ChannelStructure::generic);
    const auto v = leading_identity(chan);
    const double hi = empirical_dof(chan, v, 1e12, 1.0);
    CHECK(hi < 0.2);
    CHECK(empirical_dof(chan, v, 2e9, 2.0) == doctest::Approx(empirical_dof(chan, v, 1e9, 1.0)).epsilon(1e-9));
}

TEST_CASE("empirical S-DoF approaches L-1 for inverse alignment") {
    const auto exact = generate_random_channel(3, 1, 2, Q, 5, ChannelStructure::generic);
    const auto v = inverse_alignment_beamforming(exact, 1);
    const auto chan = exact.convert_to(F);
    const auto fv = to_float(v.mats());
    double prev = 1e9;
    for (double snr : {1e6, 1e9, 1e12}) {
        const double gap = std::abs(empirical_dof(chan, fv, snr, 1.0) - 2.0);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("secrecy rate matches a closed-form oracle for a rank-one eavesdropper") {
    const auto exact = generate_random_channel(3, 1, 2, Q, 2010, ChannelStructure::generic);
    const auto v = inverse_alignment_beamforming(exact, 2010);
    const auto chan = exact.convert_to(F);
    std::vector<Matrix> fv = to_float(v.mats());
    std::vector<Matrix> unit;
    for (const auto& m : fv) {
        double n2 = 0;
        for (std::size_t r = 0; r < m.rows(); ++r) n2 += m.approx(r, 0) * m.approx(r, 0);
        unit.push_back(m.scaled(1.0 / std::sqrt(n2)));
    }
    const Matrix legit = legit_stack(chan, unit);
    const Matrix eaves = eaves_stack(chan, unit, 1);
    for (double snr : {1e3, 1e6, 1e12}) {
        // det(I + rho G) for the 3x3 Gram matrix of the legit stack
        double g[3][3] = {};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                for (int r = 0; r < 3; ++r) g[a][b] += legit.approx(r, a) * legit.approx(r, b);
                g[a][b] *= snr;
            }
            g[a][a] += 1.0;
        }
        const double det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                           g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                           g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        double frob = 0;
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 3; ++c) frob += eaves.approx(r, c) * eaves.approx(r, c);
        }
        const double expected = 0.5 * std::log2(det) - 0.5 * std::log2(1.0 + snr * frob);
        CHECK(secrecy_rate(chan, fv, snr, 1.0) == doctest::Approx(expected).epsilon(1e-6));
    }
}
