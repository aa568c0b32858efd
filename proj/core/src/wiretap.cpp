#include "repalign/wiretap.hpp"

#include <algorithm>
#include <string>

#include "repalign/errors.hpp"
#include "repalign/linalg.hpp"

namespace repalign {

ChannelInstance::ChannelInstance(std::size_t L, std::size_t N, std::size_t K, Domain domain,
                                 std::vector<Matrix> legit, std::vector<std::vector<Matrix>> eaves,
                                 ChannelStructure structure)
    : L_(L), N_(N), K_(K), domain_(std::move(domain)), legit_(std::move(legit)), eaves_(std::move(eaves)),
      structure_(structure) {
    if (L_ < 1 || N_ < 1) throw PreconditionError("channel needs L >= 1 and N >= 1");
    if (K_ < 2) throw PreconditionError("channel needs K >= 2 (at least one eavesdropper)");
    if (legit_.size() != L_) throw DimensionError("channel needs L legitimate matrices");
    if (eaves_.size() != K_ - 1) throw DimensionError("channel needs K-1 eavesdropper rows");
    auto check = [&](const Matrix& m) {
        if (!(m.domain() == domain_)) throw DomainMismatchError("channel matrix outside the channel's domain");
        if (m.rows() != side() || m.cols() != side()) {
            throw DimensionError("channel matrices must be " + std::to_string(side()) + "x" + std::to_string(side()));
        }
        if (structure_ == ChannelStructure::diagonal && !m.is_diagonal()) {
            throw PreconditionError("diagonal channel has a non-diagonal matrix");
        }
    };
    for (const auto& m : legit_) check(m);
    for (const auto& row : eaves_) {
        if (row.size() != L_) throw DimensionError("each eavesdropper needs L matrices");
        for (const auto& m : row) check(m);
    }
}

const Matrix& ChannelInstance::legit(std::size_t user) const {
    if (user < 1 || user > L_) throw PreconditionError("user index out of range");
    return legit_[user - 1];
}

const Matrix& ChannelInstance::eaves(std::size_t eavesdropper, std::size_t user) const {
    if (eavesdropper < 1 || eavesdropper >= K_) throw PreconditionError("eavesdropper index out of range");
    if (user < 1 || user > L_) throw PreconditionError("user index out of range");
    return eaves_[eavesdropper - 1][user - 1];
}

ChannelInstance ChannelInstance::convert_to(const Domain& target) const {
    std::vector<Matrix> legit;
    for (const auto& m : legit_) legit.push_back(m.convert_to(target));
    std::vector<std::vector<Matrix>> eaves;
    for (const auto& row : eaves_) {
        auto& out = eaves.emplace_back();
        for (const auto& m : row) out.push_back(m.convert_to(target));
    }
    return ChannelInstance(L_, N_, K_, target, std::move(legit), std::move(eaves), structure_);
}

const char* to_string(ChannelStructure s) { return s == ChannelStructure::diagonal ? "diagonal" : "generic"; }

ChannelStructure parse_structure(std::string_view text) {
    if (text == "generic") return ChannelStructure::generic;
    if (text == "diagonal") return ChannelStructure::diagonal;
    throw FormatError("structure must be generic or diagonal, got '" + std::string(text) + "'");
}

BeamformingSet::BeamformingSet(std::vector<Matrix> mats, std::optional<Provenance> provenance)
    : mats_(std::move(mats)), provenance_(std::move(provenance)) {
    if (mats_.empty()) throw DimensionError("beamforming set needs one matrix per user");
    const auto& first = mats_.front();
    for (const auto& v : mats_) {
        if (!(v.domain() == first.domain())) throw DomainMismatchError("beamforming matrices must share a domain");
        if (v.rows() != first.rows() || v.cols() != first.cols()) {
            throw DimensionError("beamforming matrices must share a shape");
        }
        if (!has_full_column_rank(v)) throw PreconditionError("beamforming matrix is not full column rank");
    }
}

ChannelInstance generate_random_channel(std::size_t L, std::size_t N, std::size_t K, const Domain& domain,
                                        std::uint64_t seed, ChannelStructure structure,
                                        const SamplingOptions& sampling) {
    if (L < 1 || N < 1 || K < 2) throw PreconditionError("channel generation needs L >= 1, N >= 1, K >= 2");
    Sampler sampler(seed, sampling);
    const std::size_t side = L * N;
    auto draw = [&] {
        return structure == ChannelStructure::diagonal ? sampler.diagonal(domain, side)
                                                        : sampler.matrix(domain, side, side);
    };
    std::vector<Matrix> legit;
    for (std::size_t l = 0; l < L; ++l) legit.push_back(draw());
    std::vector<std::vector<Matrix>> eaves(K - 1);
    for (auto& row : eaves) {
        for (std::size_t l = 0; l < L; ++l) row.push_back(draw());
    }
    return ChannelInstance(L, N, K, domain, std::move(legit), std::move(eaves), structure);
}

namespace {

void check_beamforming_shape(const ChannelInstance& chan, std::span<const Matrix> v) {
    if (v.size() != chan.L()) {
        throw DimensionError("expected " + std::to_string(chan.L()) + " beamforming matrices, got " +
                             std::to_string(v.size()));
    }
    for (const auto& m : v) {
        if (!(m.domain() == chan.domain())) throw DomainMismatchError("beamforming matrix outside the channel's domain");
        if (m.rows() != chan.side() || m.cols() != chan.N()) {
            throw DimensionError("beamforming matrices must be " + std::to_string(chan.side()) + "x" +
                                 std::to_string(chan.N()));
        }
    }
}

Rational clamped_ratio(std::size_t legit, std::size_t worst, std::size_t side) {
    Rational eta = legit > worst ? Rational(static_cast<unsigned long>(legit - worst), static_cast<unsigned long>(side))
                                 : Rational(0);
    eta.canonicalize();
    return eta;
}

} // namespace

Matrix legit_stack(const ChannelInstance& chan, std::span<const Matrix> v) {
    check_beamforming_shape(chan, v);
    std::vector<Matrix> cols;
    for (std::size_t l = 1; l <= chan.L(); ++l) cols.push_back(chan.legit(l) * v[l - 1]);
    return Matrix::hstack(cols);
}

Matrix eaves_stack(const ChannelInstance& chan, std::span<const Matrix> v, std::size_t eavesdropper) {
    check_beamforming_shape(chan, v);
    std::vector<Matrix> cols;
    for (std::size_t l = 1; l <= chan.L(); ++l) cols.push_back(chan.eaves(eavesdropper, l) * v[l - 1]);
    return Matrix::hstack(cols);
}

Rational outer_bound(std::size_t L) {
    if (L < 1) throw PreconditionError("outer bound needs L >= 1");
    Rational b(static_cast<unsigned long>(L - 1), static_cast<unsigned long>(L));
    b.canonicalize();
    return b;
}

SdofReport sdof(const ChannelInstance& chan, std::span<const Matrix> v) {
    SdofReport r;
    r.side = chan.side();
    r.legit_rank = rank(legit_stack(chan, v));
    for (std::size_t e = 1; e <= chan.eavesdropper_count(); ++e) r.eaves_ranks.push_back(rank(eaves_stack(chan, v, e)));
    r.max_eaves_rank = *std::max_element(r.eaves_ranks.begin(), r.eaves_ranks.end());
    r.eta = clamped_ratio(r.legit_rank, r.max_eaves_rank, r.side);
    r.outer_bound = outer_bound(chan.L());
    r.meets_outer_bound = r.eta == r.outer_bound;
    return r;
}

SdofReport sdof(const ChannelInstance& chan, const BeamformingSet& v) {
    return sdof(chan, std::span<const Matrix>(v.mats()));
}

BeamformingSearchResult search_optimal_beamforming(const ChannelInstance& chan, const SearchOptions& options) {
    if (!chan.domain().is_prime_field()) throw PreconditionError("exhaustive beamforming search needs a prime field");
    const std::size_t side = chan.side();
    const std::size_t slots = chan.L();
    const Integer per_slot = gaussian_binomial(chan.domain().modulus(), side, chan.N());
    Integer total;
    mpz_pow_ui(total.get_mpz_t(), per_slot.get_mpz_t(), static_cast<unsigned long>(slots));
    if (total > Integer(std::to_string(options.budget))) {
        throw BudgetExceededError("exhaustive beamforming search needs " + total.get_str() +
                                  " candidates, budget is " + std::to_string(options.budget));
    }

    auto reps = column_space_representatives(chan.domain(), side, chan.N());
    // products[l][r][j]: receiver r (0 = legitimate, v = eavesdropper v) applied to rep j for user l
    const std::size_t receivers = chan.K();
    std::vector<std::vector<std::vector<Matrix>>> products(slots, std::vector<std::vector<Matrix>>(receivers));
    for (std::size_t l = 0; l < slots; ++l) {
        for (std::size_t r = 0; r < receivers; ++r) {
            const Matrix& h = r == 0 ? chan.legit(l + 1) : chan.eaves(r, l + 1);
            products[l][r].reserve(reps.size());
            for (const auto& rep : reps) products[l][r].push_back(h * rep);
        }
    }
    auto stack = [&](std::span<const std::uint32_t> t, std::size_t r) {
        std::vector<Matrix> cols;
        cols.reserve(slots);
        for (std::size_t l = 0; l < slots; ++l) cols.push_back(products[l][r][t[l]]);
        return Matrix::hstack(cols);
    };
    const TupleScore score = [&](std::span<const std::uint32_t> t) -> std::optional<std::size_t> {
        if (rank(stack(t, 0)) != side) return std::nullopt;
        std::size_t worst = 0;
        for (std::size_t r = 1; r < receivers; ++r) worst = std::max(worst, rank(stack(t, r)));
        return worst;
    };
    auto outcome = exhaustive_tuple_search(reps.size(), slots, score, options.jobs, options.collect_optimal);
    if (!outcome.found) throw NoFeasibleSolutionError("no beamforming set gives the legitimate receiver full rank");

    std::vector<Matrix> chosen;
    for (auto idx : outcome.best) chosen.push_back(reps[idx]);
    BeamformingSet set(std::move(chosen), Provenance{"exhaustive-search", 0, std::nullopt});
    auto report = sdof(chan, set);
    BeamformingSearchResult result{std::move(set), std::move(report), outcome.evaluated, outcome.feasible,
                                   std::move(outcome.optimal), {}};
    if (options.collect_optimal) result.representatives = std::move(reps);
    return result;
}

} // namespace repalign
