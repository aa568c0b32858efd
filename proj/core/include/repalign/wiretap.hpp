#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "repalign/matrix.hpp"
#include "repalign/random.hpp"
#include "repalign/strategy.hpp"
#include "repalign/subspace.hpp"

namespace repalign {

enum class ChannelStructure { generic, diagonal };

/// An (L, N)^{K-1} multiple-access compound wiretap channel.
///
/// L users each send N symbols; the legitimate receiver and each of the K-1
/// eavesdroppers see square channel matrices of side LN. User and
/// eavesdropper indices are 1-based.
class ChannelInstance {
public:
    ChannelInstance(std::size_t L, std::size_t N, std::size_t K, Domain domain, std::vector<Matrix> legit,
                    std::vector<std::vector<Matrix>> eaves, ChannelStructure structure);

    std::size_t L() const noexcept { return L_; }
    std::size_t N() const noexcept { return N_; }
    std::size_t K() const noexcept { return K_; }
    std::size_t eavesdropper_count() const noexcept { return K_ - 1; }
    std::size_t side() const noexcept { return L_ * N_; }
    const Domain& domain() const noexcept { return domain_; }
    ChannelStructure structure() const noexcept { return structure_; }

    const Matrix& legit(std::size_t user) const;
    const Matrix& eaves(std::size_t eavesdropper, std::size_t user) const;
    const std::vector<Matrix>& legit_blocks() const noexcept { return legit_; }
    const std::vector<std::vector<Matrix>>& eaves_blocks() const noexcept { return eaves_; }

    /// Same instance with every matrix converted (e.g. rational -> float).
    ChannelInstance convert_to(const Domain& target) const;

    friend bool operator==(const ChannelInstance&, const ChannelInstance&) = default;

private:
    std::size_t L_;
    std::size_t N_;
    std::size_t K_;
    Domain domain_;
    std::vector<Matrix> legit_;
    std::vector<std::vector<Matrix>> eaves_;
    ChannelStructure structure_;
};

const char* to_string(ChannelStructure s);
ChannelStructure parse_structure(std::string_view text);

/// Beamforming matrices V^(1..L), each LN x N with full column rank.
class BeamformingSet {
public:
    explicit BeamformingSet(std::vector<Matrix> mats, std::optional<Provenance> provenance = std::nullopt);

    const std::vector<Matrix>& mats() const noexcept { return mats_; }
    const Matrix& mat(std::size_t user) const { return mats_.at(user - 1); }
    const std::optional<Provenance>& provenance() const noexcept { return provenance_; }

private:
    std::vector<Matrix> mats_;
    std::optional<Provenance> provenance_;
};

struct SdofReport {
    std::size_t side = 0; ///< LN
    std::size_t legit_rank = 0;
    std::vector<std::size_t> eaves_ranks;
    std::size_t max_eaves_rank = 0;
    Rational eta;         ///< [legit_rank - max_eaves_rank]^+ / LN
    Rational outer_bound; ///< (L-1)/L
    bool meets_outer_bound = false;
};

ChannelInstance generate_random_channel(std::size_t L, std::size_t N, std::size_t K, const Domain& domain,
                                        std::uint64_t seed, ChannelStructure structure,
                                        const SamplingOptions& sampling = {});

/// [H^(1) V^(1) ... H^(L) V^(L)] for the legitimate receiver.
Matrix legit_stack(const ChannelInstance& chan, std::span<const Matrix> v);
/// The same stack as seen by eavesdropper `eavesdropper` (1-based).
Matrix eaves_stack(const ChannelInstance& chan, std::span<const Matrix> v, std::size_t eavesdropper);

/// Raw form: V is only checked for shape and domain.
SdofReport sdof(const ChannelInstance& chan, std::span<const Matrix> v);
SdofReport sdof(const ChannelInstance& chan, const BeamformingSet& v);

Rational outer_bound(std::size_t L);

struct BeamformingSearchResult {
    BeamformingSet set;
    SdofReport report;
    std::uint64_t candidates = 0;
    std::uint64_t feasible_candidates = 0;
    std::vector<Tuple> optimal_set;      ///< with `collect_optimal`
    std::vector<Matrix> representatives; ///< with `collect_optimal`
};

/// Problem V: minimize the largest eavesdropper rank subject to the
/// legitimate stack having full rank LN, by enumerating one representative per
/// column space for each V^(l) over GF(p).
BeamformingSearchResult search_optimal_beamforming(const ChannelInstance& chan, const SearchOptions& options = {});

/// Finite-SNR secrecy rate in bits per channel use over a float channel.
///
/// Each V^(l) is orthonormalized and scaled by sqrt(P/N) first; the rate is
/// 1/2 log2 det(I + G G^T / sigma2) for the legitimate stack G minus the
/// largest eavesdropper term, clamped at 0.
double secrecy_rate(const ChannelInstance& chan, std::span<const Matrix> v, double power, double noise);

/// secrecy_rate / (1/2 log2(P / sigma2)); needs P > sigma2.
double empirical_dof(const ChannelInstance& chan, std::span<const Matrix> v, double power, double noise);

} // namespace repalign
