#pragma once

#include <optional>
#include <vector>

#include "repalign/mds_code.hpp"
#include "repalign/repair.hpp"
#include "repalign/wiretap.hpp"

namespace repalign {

enum class MappingDirection { code_to_channel, channel_to_code };

const char* to_string(MappingDirection d);

/// Parameter correspondence L = n-k, N = beta, K = k between a code repaired
/// at `node` and a channel. `eavesdropper_pieces[v-1]` is the piece u that
/// plays eavesdropper v: u = v below the failed node, u = v+1 above it.
struct MappingRecord {
    MappingDirection direction = MappingDirection::code_to_channel;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t beta = 0;
    std::size_t L = 0;
    std::size_t N = 0;
    std::size_t K = 0;
    std::size_t node = 1;
    std::vector<std::size_t> eavesdropper_pieces;
    /// Set by channel_to_code only; false flags an MDS violation.
    std::optional<bool> is_mds;
};

struct CodeChannelMapping {
    ChannelInstance channel;
    MappingRecord record;
};

struct ChannelCodeMapping {
    MdsCode code;
    MappingRecord record;
};

/// H = P_i A: legitimate blocks A_i^(l), eavesdropper v sees A_u^(l).
CodeChannelMapping code_to_channel(const MdsCode& code, std::size_t i);

/// A = H: block row 1 holds the legitimate matrices, rows 2..K the
/// eavesdroppers. The MDS property is checked and recorded, never thrown.
ChannelCodeMapping channel_to_code(const ChannelInstance& chan, std::size_t jobs = 1);

/// Identity transport V^(l) := R^(l) (and back), with dimension checks
/// against the record.
BeamformingSet transport_to_beamforming(const RepairStrategy& strategy, const MappingRecord& record);
RepairStrategy transport_to_repair(const BeamformingSet& set, const MappingRecord& record);

struct Bounds {
    Rational low;
    Rational high;
};

/// S-DoF achievable from an overhead delta: ([2 - delta]^+, (k - delta)/(k - 1)).
Bounds lemma3_bounds(std::size_t k, const Rational& delta);

/// Overhead achievable from an S-DoF eta: (2 - eta, 1 + (K - 1)(1 - eta)).
Bounds lemma5_bounds(std::size_t K, const Rational& eta);

/// Outcome of running both exhaustive searches on a mapped pair.
struct EquivalenceReport {
    MappingRecord mapping;
    std::size_t optimal_sum = 0;          ///< problem R optimum: min sum of interference ranks
    std::size_t optimal_max = 0;          ///< problem V optimum: min max eavesdropper rank
    Rational optimal_delta;
    Rational optimal_eta;
    std::size_t repair_optimal_count = 0; ///< tuples achieving optimal_sum
    std::size_t beam_optimal_count = 0;   ///< tuples achieving optimal_max
    std::uint64_t repair_candidates = 0;
    std::uint64_t beam_candidates = 0;
    bool sum_equals_scaled_max = false;   ///< optimal_sum == (k-1) optimal_max
    bool optimal_sets_coincide = false;   ///< same representative tuples under transport
    bool hypothesis_holds = false;        ///< code optimal (sum = (k-1)beta) / outer bound achievable
    bool optimal_values_match = false;    ///< hypothesis and sum = (k-1)beta, max = beta
};

EquivalenceReport verify_theorem1(const MdsCode& code, std::size_t i, const SearchOptions& options = {});

/// Mirror at failed node 1 of channel_to_code(chan); the hypothesis is that
/// the channel's optimum reaches (L-1)/L.
EquivalenceReport verify_theorem2(const ChannelInstance& chan, const SearchOptions& options = {});

} // namespace repalign
