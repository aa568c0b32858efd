#include "repalign/constructions.hpp"

#include <functional>
#include <string>

#include "repalign/errors.hpp"
#include "repalign/linalg.hpp"

namespace repalign {

namespace {

std::size_t checked_pow(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    for (std::size_t e = 0; e < exp; ++e) {
        if (out > (std::size_t{1} << 40) / std::max<std::size_t>(base, 1)) {
            throw PreconditionError("symbol extension is too large");
        }
        out *= base;
    }
    return out;
}

Integer integer_pow(std::size_t base, std::size_t exp) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return out;
}

} // namespace

SymbolExtensionPlan SymbolExtensionPlan::make(std::size_t L, std::size_t K, std::size_t delta) {
    if (L < 1 || K < 2 || delta < 1) throw PreconditionError("symbol extension needs L >= 1, K >= 2, delta >= 1");
    SymbolExtensionPlan plan;
    plan.L = L;
    plan.K = K;
    plan.delta = delta;
    const std::size_t positions = (K - 1) * L;
    plan.N = checked_pow(delta, positions);
    plan.side = L * plan.N;
    std::vector<std::size_t> tuple(positions, 1);
    for (std::size_t t = 0; t < plan.N; ++t) {
        plan.exponents.push_back(tuple);
        for (std::size_t pos = positions; pos > 0; --pos) {
            if (++tuple[pos - 1] <= delta) break;
            tuple[pos - 1] = 1;
        }
    }
    return plan;
}

Rational eq13_guarantee(std::size_t L, std::size_t K, std::size_t delta) {
    if (L < 1 || K < 2 || delta < 1) throw PreconditionError("eq13 guarantee needs L >= 1, K >= 2, delta >= 1");
    const std::size_t positions = (K - 1) * L;
    const Integer side = Integer(static_cast<unsigned long>(L)) * integer_pow(delta, positions);
    const Integer bound = integer_pow(delta + 1, positions);
    if (bound >= side) return Rational(0);
    Rational out(side - bound, side);
    out.canonicalize();
    return out;
}

Integer symbol_extension_min_modulus(std::size_t L, std::size_t K, std::size_t delta) {
    const std::size_t positions = (K - 1) * L;
    const Integer side = Integer(static_cast<unsigned long>(L)) * integer_pow(delta, positions);
    return 2 * integer_pow(delta + 1, positions) * side;
}

namespace {

using EavesLookup = std::function<const Matrix&(std::size_t eavesdropper, std::size_t user)>;

// Column t of the shared beamformer is (prod_pos D_pos^{a_pos}) w. The
// diagonal products do not depend on w, so they are formed once and only the
// vector is redrawn.
Matrix product_beamformer(const Domain& domain, const SymbolExtensionPlan& plan, const EavesLookup& eaves,
                          std::uint64_t seed, std::size_t max_attempts,
                          const std::function<bool(const Matrix&)>& accept) {
    if (domain.is_prime_field() && Integer(std::to_string(domain.modulus())) <
                                       symbol_extension_min_modulus(plan.L, plan.K, plan.delta)) {
        throw PreconditionError("GF(" + std::to_string(domain.modulus()) + ") is too small for symbol extension; need p >= " +
                                symbol_extension_min_modulus(plan.L, plan.K, plan.delta).get_str());
    }
    const std::size_t positions = (plan.K - 1) * plan.L;
    // powers[pos][a - 1] = D_pos^a, with pos = (l' - 1)(K - 1) + (v - 1)
    std::vector<std::vector<Matrix>> powers(positions);
    for (std::size_t l = 1; l <= plan.L; ++l) {
        for (std::size_t v = 1; v < plan.K; ++v) {
            auto& chain = powers[(l - 1) * (plan.K - 1) + (v - 1)];
            const Matrix& d = eaves(v, l);
            chain.push_back(d);
            for (std::size_t a = 2; a <= plan.delta; ++a) chain.push_back(chain.back() * d);
        }
    }
    std::vector<Matrix> products;
    products.reserve(plan.N);
    for (const auto& tuple : plan.exponents) {
        Matrix acc = Matrix::identity(domain, plan.side);
        for (std::size_t pos = 0; pos < positions; ++pos) acc = acc * powers[pos][tuple[pos] - 1];
        products.push_back(std::move(acc));
    }

    Sampler sampler(seed);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        const Matrix w = sampler.matrix(domain, plan.side, 1);
        std::vector<Matrix> cols;
        cols.reserve(plan.N);
        for (const auto& p : products) cols.push_back(p * w);
        Matrix v = Matrix::hstack(cols);
        if (has_full_column_rank(v) && accept(v)) return v;
    }
    throw GenerationFailedError("symbol-extension beamformer stayed rank deficient after " +
                                std::to_string(max_attempts) + " draws of w");
}

bool all_diagonal(const ChannelInstance& chan) {
    if (chan.structure() == ChannelStructure::diagonal) return true;
    for (const auto& m : chan.legit_blocks()) {
        if (!m.is_diagonal()) return false;
    }
    for (const auto& row : chan.eaves_blocks()) {
        for (const auto& m : row) {
            if (!m.is_diagonal()) return false;
        }
    }
    return true;
}

// Piece u playing eavesdropper v once piece i is moved to the front.
std::size_t piece_for_eavesdropper(std::size_t i, std::size_t v) { return v < i ? v : v + 1; }

} // namespace

RepairStrategy inverse_alignment_repair(const MdsCode& code, std::size_t i, std::uint64_t seed,
                                        std::size_t max_attempts) {
    if (code.k() != 2) throw PreconditionError("inverse alignment repair needs k = 2");
    if (i != 1 && i != 2) throw PreconditionError("failed node must be 1 or 2");
    const std::size_t u = 3 - i;
    std::vector<Matrix> inverses;
    for (std::size_t p = 1; p <= code.parity_count(); ++p) {
        const Matrix& a = code.block(u, p);
        if (rank(a) != a.rows()) {
            throw SingularMatrixError("coding block A_" + std::to_string(u) + "^(" + std::to_string(p) + ") is singular");
        }
        inverses.push_back(inverse(a));
    }
    Sampler sampler(seed);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        const Matrix w = sampler.matrix(code.domain(), code.node_size(), code.beta());
        if (!has_full_column_rank(w)) continue;
        std::vector<Matrix> mats;
        for (const auto& inv : inverses) mats.push_back(inv * w);
        RepairStrategy strategy(i, std::move(mats), Provenance{"inverse-alignment", seed, std::nullopt});
        if (repair_feasible(code, strategy)) return strategy;
    }
    throw InfeasibleStrategyError("inverse alignment stayed infeasible after " + std::to_string(max_attempts) +
                                  " draws of W");
}

BeamformingSet inverse_alignment_beamforming(const ChannelInstance& chan, std::uint64_t seed,
                                             std::size_t max_attempts) {
    if (chan.K() != 2) throw PreconditionError("inverse alignment beamforming needs K = 2");
    std::vector<Matrix> inverses;
    for (std::size_t l = 1; l <= chan.L(); ++l) {
        const Matrix& h = chan.eaves(1, l);
        if (rank(h) != h.rows()) {
            throw SingularMatrixError("eavesdropper channel H_e1^(" + std::to_string(l) + ") is singular");
        }
        inverses.push_back(inverse(h));
    }
    Sampler sampler(seed);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        const Matrix w = sampler.matrix(chan.domain(), chan.side(), chan.N());
        if (!has_full_column_rank(w)) continue;
        std::vector<Matrix> mats;
        for (const auto& inv : inverses) mats.push_back(inv * w);
        if (rank(legit_stack(chan, mats)) != chan.side()) continue;
        return BeamformingSet(std::move(mats), Provenance{"inverse-alignment", seed, std::nullopt});
    }
    throw InfeasibleStrategyError("legitimate stack stayed rank deficient after " + std::to_string(max_attempts) +
                                  " draws of W");
}

BeamformingSet symbol_extension_beamforming(const ChannelInstance& chan, std::size_t delta, std::uint64_t seed,
                                            std::size_t max_attempts) {
    if (!all_diagonal(chan)) throw PreconditionError("symbol extension needs a diagonal channel");
    const auto plan = SymbolExtensionPlan::make(chan.L(), chan.K(), delta);
    if (chan.side() != plan.side || chan.N() != plan.N) {
        throw DimensionError("symbol extension with delta = " + std::to_string(delta) + " needs N = " +
                             std::to_string(plan.N) + " (side " + std::to_string(plan.side) + "), channel has N = " +
                             std::to_string(chan.N()));
    }
    const EavesLookup eaves = [&](std::size_t v, std::size_t l) -> const Matrix& { return chan.eaves(v, l); };
    const Matrix v = product_beamformer(chan.domain(), plan, eaves, seed, max_attempts, [&](const Matrix& cand) {
        const std::vector<Matrix> shared(chan.L(), cand);
        return rank(legit_stack(chan, shared)) == chan.side();
    });
    return BeamformingSet(std::vector<Matrix>(chan.L(), v), Provenance{"symbol-extension", seed, delta});
}

RepairStrategy symbol_extension_repair(const MdsCode& code, std::size_t i, std::size_t delta, std::uint64_t seed,
                                       std::size_t max_attempts) {
    if (i < 1 || i > code.k()) throw PreconditionError("failed node must be systematic (1..k)");
    if (code.k() < 2) throw PreconditionError("symbol extension repair needs k >= 2");
    if (!code.all_blocks_diagonal()) throw PreconditionError("symbol extension repair needs diagonal coding blocks");
    const auto plan = SymbolExtensionPlan::make(code.parity_count(), code.k(), delta);
    if (code.beta() != plan.N) {
        throw DimensionError("symbol extension with delta = " + std::to_string(delta) + " needs beta = " +
                             std::to_string(plan.N) + ", code has beta = " + std::to_string(code.beta()));
    }
    const EavesLookup eaves = [&](std::size_t v, std::size_t l) -> const Matrix& {
        return code.block(piece_for_eavesdropper(i, v), l);
    };
    const Matrix v = product_beamformer(code.domain(), plan, eaves, seed, max_attempts, [&](const Matrix& cand) {
        const std::vector<Matrix> shared(code.parity_count(), cand);
        return rank(repair_space(code, shared, i)) == code.node_size();
    });
    return RepairStrategy(i, std::vector<Matrix>(code.parity_count(), v), Provenance{"symbol-extension", seed, delta});
}

} // namespace repalign
