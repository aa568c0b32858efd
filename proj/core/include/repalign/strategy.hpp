#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace repalign {

/// Names the construction that produced a strategy or beamforming set.
struct Provenance {
    std::string construction;
    std::uint64_t seed = 0;
    std::optional<std::size_t> delta;
};

/// Knobs shared by the exhaustive searches.
struct SearchOptions {
    std::uint64_t budget = 100'000'000; ///< cap on the number of candidate tuples
    std::size_t jobs = 1;
    bool collect_optimal = false;
};

} // namespace repalign
