#include "repalign/bridge.hpp"

#include <algorithm>
#include <string>

#include "repalign/errors.hpp"

namespace repalign {

const char* to_string(MappingDirection d) {
    return d == MappingDirection::code_to_channel ? "code_to_channel" : "channel_to_code";
}

namespace {

MappingRecord make_record(MappingDirection direction, std::size_t n, std::size_t k, std::size_t beta,
                          std::size_t node) {
    MappingRecord r;
    r.direction = direction;
    r.n = n;
    r.k = k;
    r.beta = beta;
    r.L = n - k;
    r.N = beta;
    r.K = k;
    r.node = node;
    for (auto u : permuted_piece_order(k, node)) {
        if (u != node) r.eavesdropper_pieces.push_back(u);
    }
    return r;
}

void check_against_record(const std::vector<Matrix>& mats, const MappingRecord& record) {
    if (mats.size() != record.L) {
        throw DimensionError("mapped instance has " + std::to_string(record.L) + " users/parities, got " +
                             std::to_string(mats.size()) + " matrices");
    }
    for (const auto& m : mats) {
        if (m.rows() != record.L * record.N || m.cols() != record.N) {
            throw DimensionError("transported matrices must be " + std::to_string(record.L * record.N) + "x" +
                                 std::to_string(record.N));
        }
    }
}

} // namespace

CodeChannelMapping code_to_channel(const MdsCode& code, std::size_t i) {
    if (i < 1 || i > code.k()) throw PreconditionError("failed node must be systematic (1..k)");
    if (code.k() < 2) throw PreconditionError("code_to_channel needs k >= 2 so the channel has an eavesdropper");
    auto record = make_record(MappingDirection::code_to_channel, code.n(), code.k(), code.beta(), i);
    const auto rows = permuted_blocks(code, i);
    std::vector<std::vector<Matrix>> eaves(rows.begin() + 1, rows.end());
    const auto structure = code.all_blocks_diagonal() ? ChannelStructure::diagonal : ChannelStructure::generic;
    ChannelInstance chan(record.L, record.N, record.K, code.domain(), rows.front(), std::move(eaves), structure);
    return {std::move(chan), std::move(record)};
}

ChannelCodeMapping channel_to_code(const ChannelInstance& chan, std::size_t jobs) {
    if (!chan.domain().is_exact()) throw PreconditionError("channel_to_code needs an exact domain");
    auto record = make_record(MappingDirection::channel_to_code, chan.L() + chan.K(), chan.K(), chan.N(), 1);
    std::vector<std::vector<Matrix>> blocks{chan.legit_blocks()};
    for (const auto& row : chan.eaves_blocks()) blocks.push_back(row);
    MdsCode code(record.n, record.k, record.beta, chan.domain(), std::move(blocks));
    record.is_mds = is_mds(code, jobs);
    return {std::move(code), std::move(record)};
}

BeamformingSet transport_to_beamforming(const RepairStrategy& strategy, const MappingRecord& record) {
    check_against_record(strategy.matrices(), record);
    if (strategy.failed_node() != record.node) {
        throw PreconditionError("strategy repairs node " + std::to_string(strategy.failed_node()) +
                                " but the mapping is for node " + std::to_string(record.node));
    }
    return BeamformingSet(strategy.matrices(), strategy.provenance());
}

RepairStrategy transport_to_repair(const BeamformingSet& set, const MappingRecord& record) {
    check_against_record(set.mats(), record);
    return RepairStrategy(record.node, set.mats(), set.provenance());
}

Bounds lemma3_bounds(std::size_t k, const Rational& delta) {
    if (k < 2) throw PreconditionError("lemma3_bounds needs k >= 2 (the mapped channel has no eavesdropper)");
    Rational low = 2 - delta;
    if (low < 0) low = 0;
    Rational high = (Rational(static_cast<unsigned long>(k)) - delta) / Rational(static_cast<unsigned long>(k - 1));
    high.canonicalize();
    return {low, high};
}

Bounds lemma5_bounds(std::size_t K, const Rational& eta) {
    if (K < 2) throw PreconditionError("lemma5_bounds needs K >= 2");
    if (eta < 0 || eta > 1) throw PreconditionError("lemma5_bounds needs 0 <= eta <= 1");
    Rational low = 2 - eta;
    Rational high = 1 + Rational(static_cast<unsigned long>(K - 1)) * (1 - eta);
    high.canonicalize();
    return {low, high};
}

namespace {

EquivalenceReport compare(const MdsCode& code, const ChannelInstance& chan, MappingRecord record,
                          const SearchOptions& options) {
    SearchOptions collect = options;
    collect.collect_optimal = true;
    const auto repair = search_optimal_repair(code, record.node, ExhaustiveSearch{}, collect);
    const auto beam = search_optimal_beamforming(chan, collect);

    EquivalenceReport r;
    r.mapping = std::move(record);
    r.optimal_sum = repair.report.interference_sum();
    r.optimal_max = beam.report.max_eaves_rank;
    r.optimal_delta = repair.report.overhead;
    r.optimal_eta = beam.report.eta;
    r.repair_optimal_count = repair.optimal_set.size();
    r.beam_optimal_count = beam.optimal_set.size();
    r.repair_candidates = repair.candidates;
    r.beam_candidates = beam.candidates;
    r.sum_equals_scaled_max = r.optimal_sum == (code.k() - 1) * r.optimal_max;

    auto a = repair.optimal_set;
    auto b = beam.optimal_set;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    r.optimal_sets_coincide = repair.representatives == beam.representatives && a == b;
    return r;
}

} // namespace

EquivalenceReport verify_theorem1(const MdsCode& code, std::size_t i, const SearchOptions& options) {
    auto mapped = code_to_channel(code, i);
    auto r = compare(code, mapped.channel, std::move(mapped.record), options);
    r.hypothesis_holds = r.optimal_sum == (code.k() - 1) * code.beta();
    r.optimal_values_match = r.hypothesis_holds && r.optimal_max == code.beta();
    return r;
}

EquivalenceReport verify_theorem2(const ChannelInstance& chan, const SearchOptions& options) {
    auto mapped = channel_to_code(chan, options.jobs);
    auto r = compare(mapped.code, chan, std::move(mapped.record), options);
    r.hypothesis_holds = r.optimal_eta == outer_bound(chan.L());
    r.optimal_values_match =
        r.hypothesis_holds && r.optimal_max == chan.N() && r.optimal_sum == (chan.K() - 1) * chan.N();
    return r;
}

} // namespace repalign
