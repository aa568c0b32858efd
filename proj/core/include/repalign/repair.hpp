#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "repalign/mds_code.hpp"
#include "repalign/strategy.hpp"
#include "repalign/subspace.hpp"

namespace repalign {

/// Repair matrices R_i^(1..n-k) for regenerating systematic node i.
///
/// Each matrix is (n-k) beta x beta with full column rank beta; a rank
/// deficient matrix would download redundant equations and is rejected here.
class RepairStrategy {
public:
    RepairStrategy(std::size_t failed_node, std::vector<Matrix> matrices,
                   std::optional<Provenance> provenance = std::nullopt);

    std::size_t failed_node() const noexcept { return failed_node_; }
    const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
    const Matrix& matrix(std::size_t parity) const { return matrices_.at(parity - 1); }
    const std::optional<Provenance>& provenance() const noexcept { return provenance_; }

private:
    std::size_t failed_node_;
    std::vector<Matrix> matrices_;
    std::optional<Provenance> provenance_;
};

struct RepairReport {
    std::size_t failed_node = 0;
    bool feasible = false;
    std::vector<std::size_t> interference_nodes; ///< u != i in ascending order
    std::vector<std::size_t> interference_ranks; ///< aligned with interference_nodes
    Rational overhead;                           ///< delta; meaningful only when feasible
    std::size_t parity_download = 0;             ///< (n-k) beta
    std::vector<std::size_t> systematic_downloads;

    std::size_t interference_sum() const;
    std::size_t total_download() const;
};

/// Coefficient rows each parity sends: [A_1^(p) R^(p) ... A_k^(p) R^(p)]^T,
/// one beta x k(n-k)beta matrix per parity. Raw form: no rank check on R.
std::vector<Matrix> parity_transmissions(const MdsCode& code, std::span<const Matrix> repair_matrices);
std::vector<Matrix> parity_transmissions(const MdsCode& code, const RepairStrategy& strategy);

/// [A_u^(1) R^(1) ... A_u^(n-k) R^(n-k)] for any piece u (u = i gives the useful space).
Matrix repair_space(const MdsCode& code, std::span<const Matrix> repair_matrices, std::size_t piece);

bool repair_feasible(const MdsCode& code, const RepairStrategy& strategy);

/// Rank of the interference space created by piece u; rejects u = failed node.
std::size_t interference_rank(const MdsCode& code, const RepairStrategy& strategy, std::size_t u);

/// Full evaluation without throwing on infeasibility.
RepairReport evaluate_repair(const MdsCode& code, const RepairStrategy& strategy);

/// delta = 1 + sum_{u != i} rank_u / ((n-k) beta); throws `InfeasibleStrategyError`.
Rational repair_overhead(const MdsCode& code, const RepairStrategy& strategy);

struct Reconstruction {
    Matrix piece;
    std::size_t parity_symbols = 0;
    std::size_t systematic_symbols = 0;
    std::size_t symbols_downloaded() const { return parity_symbols + systematic_symbols; }
};

/// Regenerates f_i from the n-1 surviving nodes: beta equations per parity,
/// a reduced-echelon basis of each interference row space from each
/// systematic node, interference cancellation, then the useful-space inverse.
/// Throws `InconsistentContentsError` when the survivors disagree with the code.
Reconstruction reconstruct(const MdsCode& code, const RepairStrategy& strategy,
                           std::span<const NodeContent> surviving);

struct ExhaustiveSearch {};
struct RandomizedSearch {
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
};
using RepairSearchMode = std::variant<ExhaustiveSearch, RandomizedSearch>;

struct RepairSearchResult {
    RepairStrategy strategy;
    RepairReport report;
    std::uint64_t candidates = 0;
    std::uint64_t feasible_candidates = 0;
    /// Exhaustive mode with `collect_optimal`: every optimal tuple of
    /// column-space representatives (indices into `representatives`).
    std::vector<Tuple> optimal_set;
    std::vector<Matrix> representatives;
};

/// Problem R: minimize the interference rank sum subject to the useful space
/// having full rank. Exhaustive mode enumerates one representative per column
/// space for each parity over GF(p) and is capped by `options.budget`.
RepairSearchResult search_optimal_repair(const MdsCode& code, std::size_t i, const RepairSearchMode& mode,
                                         const SearchOptions& options = {});

} // namespace repalign
