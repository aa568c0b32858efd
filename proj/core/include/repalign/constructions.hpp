#pragma once

#include <cstdint>
#include <vector>

#include "repalign/mds_code.hpp"
#include "repalign/repair.hpp"
#include "repalign/wiretap.hpp"

namespace repalign {

/// Exponent grid of the symbol-extension product set.
///
/// Positions are the (user l', eavesdropper v) pairs with l' outer and v
/// inner; tuples run over {1..delta}^positions in odometer order, last
/// position fastest. Column t of the shared beamformer is
/// prod_pos (H_ev^(pos))^{exponents[t][pos]} w.
struct SymbolExtensionPlan {
    std::size_t L = 0;
    std::size_t K = 0;
    std::size_t delta = 0;
    std::size_t N = 0;    ///< delta^{(K-1)L}
    std::size_t side = 0; ///< L * N
    std::vector<std::vector<std::size_t>> exponents;

    static SymbolExtensionPlan make(std::size_t L, std::size_t K, std::size_t delta);
};

/// Two-piece codes: R^(p) = (A_u^(p))^{-1} W for the other piece u, so every
/// interference block collapses onto span(W). W is resampled until the
/// strategy is feasible (at most `max_attempts` draws).
RepairStrategy inverse_alignment_repair(const MdsCode& code, std::size_t i, std::uint64_t seed,
                                        std::size_t max_attempts = 64);

/// Single eavesdropper: V^(l) = (H_e1^(l))^{-1} W, resampling W until the
/// legitimate stack has full rank.
BeamformingSet inverse_alignment_beamforming(const ChannelInstance& chan, std::uint64_t seed,
                                             std::size_t max_attempts = 64);

/// Shared beamformer V^ on a diagonal channel of side L * delta^{(K-1)L};
/// every user gets the same matrix.
BeamformingSet symbol_extension_beamforming(const ChannelInstance& chan, std::size_t delta, std::uint64_t seed,
                                            std::size_t max_attempts = 64);

/// The storage-side mirror: R^(p) = V^ for every parity, with the interference
/// blocks A_u^(p) (u != i) in the eavesdropper roles. Needs diagonal blocks and
/// beta = delta^{(k-1)(n-k)}.
RepairStrategy symbol_extension_repair(const MdsCode& code, std::size_t i, std::size_t delta, std::uint64_t seed,
                                       std::size_t max_attempts = 64);

/// [L delta^{(K-1)L} - (delta+1)^{(K-1)L}]^+ / (L delta^{(K-1)L}).
Rational eq13_guarantee(std::size_t L, std::size_t K, std::size_t delta);

/// Smallest prime modulus treated as "large enough" for symbol extension:
/// 2 (delta+1)^{(K-1)L} L N.
Integer symbol_extension_min_modulus(std::size_t L, std::size_t K, std::size_t delta);

} // namespace repalign
