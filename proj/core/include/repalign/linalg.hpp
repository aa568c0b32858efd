#pragma once

#include <cstddef>
#include <vector>

#include "repalign/matrix.hpp"

namespace repalign {

/// Number of pivots of a row reduction.
///
/// Exact domains pivot on the first nonzero entry and return the
/// mathematical rank. The float domain pivots on the largest magnitude in the
/// column and counts a pivot only when it exceeds tau times the largest
/// absolute entry of the input.
std::size_t rank(const Matrix& m);

struct RowEchelon {
    Matrix reduced;                         ///< reduced row-echelon form, same shape as the input
    std::vector<std::size_t> pivot_columns; ///< one per nonzero row, increasing
};

RowEchelon reduced_row_echelon(const Matrix& m);

/// Canonical basis of the row space: the nonzero rows of the RREF.
/// A zero input yields a 0 x cols matrix.
Matrix row_space_basis(const Matrix& m);

/// Throws `SingularMatrixError` when rank < rows.
Matrix inverse(const Matrix& m);

/// Solves A X = Y for square invertible A (Y may have several columns).
Matrix solve(const Matrix& a, const Matrix& y);

Matrix kron(const Matrix& a, const Matrix& b);

bool has_full_column_rank(const Matrix& m);

} // namespace repalign
