#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "repalign/matrix.hpp"

namespace repalign {

/// Number of dim-dimensional subspaces of GF(p)^ambient.
Integer gaussian_binomial(std::uint64_t p, std::size_t ambient, std::size_t dim);

/// One representative per dim-dimensional subspace of GF(p)^ambient, as an
/// ambient x dim matrix whose transpose is in reduced row-echelon form.
/// Sorted lexicographically by the row-major entries of that echelon form, which
/// fixes the tie-break order of every search built on top.
std::vector<Matrix> column_space_representatives(const Domain& field, std::size_t ambient, std::size_t dim);

/// Canonical representative of the column space of `m` (full column rank
/// assumed): transpose of the RREF of m^T.
Matrix canonical_column_space(const Matrix& m);

using Tuple = std::vector<std::uint32_t>;

struct TupleSearchOutcome {
    bool found = false;
    Tuple best;                 ///< lexicographically first tuple of minimum score
    std::size_t best_score = 0;
    std::uint64_t evaluated = 0;
    std::uint64_t feasible = 0;
    std::vector<Tuple> optimal; ///< every minimizer in lexicographic order (when collected)
};

/// Scores a tuple; nullopt marks it infeasible.
using TupleScore = std::function<std::optional<std::size_t>(std::span<const std::uint32_t>)>;

/// Scores every tuple of {0..choices-1}^slots and keeps the lexicographically
/// first minimizer. Work is split over `jobs` threads in contiguous index
/// ranges; the reduction is order-independent so the result does not depend
/// on `jobs`.
TupleSearchOutcome exhaustive_tuple_search(std::size_t choices, std::size_t slots, const TupleScore& score,
                                           std::size_t jobs, bool collect_optimal);

} // namespace repalign
