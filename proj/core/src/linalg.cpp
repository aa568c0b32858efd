#include "repalign/linalg.hpp"

#include <algorithm>
#include <string>

#include "field_ops.hpp"

namespace repalign {

namespace {

/// Largest magnitude among the first `pivot_cols` columns; the float pivot
/// threshold is relative to this.
template <class Ops>
double pivot_scale(const Ops& ops, const std::vector<typename Ops::value_type>& a, std::size_t rows,
                   std::size_t cols, std::size_t pivot_cols) {
    double scale = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < pivot_cols; ++c) scale = std::max(scale, ops.magnitude(a[r * cols + c]));
    }
    return scale;
}

/// In-place row reduction of a rows x cols row-major block. Only the first
/// `pivot_cols` columns are eligible as pivots (the rest ride along, as in an
/// augmented system). With `reduced`, pivots are normalized to one and cleared
/// above as well as below.
template <class Ops>
std::vector<std::size_t> row_reduce(const Ops& ops, std::vector<typename Ops::value_type>& a, std::size_t rows,
                                    std::size_t cols, std::size_t pivot_cols, bool reduced) {
    std::vector<std::size_t> pivots;
    double threshold = 0.0;
    if constexpr (!Ops::exact) {
        threshold = ops.tau * pivot_scale(ops, a, rows, cols, pivot_cols);
        if (threshold == 0.0) return pivots;
    }
    std::size_t row = 0;
    for (std::size_t col = 0; col < pivot_cols && row < rows; ++col) {
        std::size_t best = rows;
        if constexpr (Ops::exact) {
            for (std::size_t r = row; r < rows; ++r) {
                if (!ops.is_zero(a[r * cols + col])) {
                    best = r;
                    break;
                }
            }
        } else {
            double best_mag = threshold;
            for (std::size_t r = row; r < rows; ++r) {
                const double mag = ops.magnitude(a[r * cols + col]);
                if (mag > best_mag) {
                    best_mag = mag;
                    best = r;
                }
            }
        }
        if (best == rows) {
            if constexpr (!Ops::exact) {
                for (std::size_t r = row; r < rows; ++r) a[r * cols + col] = ops.zero();
            }
            continue;
        }
        if (best != row) {
            for (std::size_t c = 0; c < cols; ++c) std::swap(a[row * cols + c], a[best * cols + c]);
        }
        if (reduced) {
            const auto inv = ops.inv(a[row * cols + col]);
            for (std::size_t c = col; c < cols; ++c) a[row * cols + c] = ops.mul(a[row * cols + c], inv);
            a[row * cols + col] = ops.one();
        }
        const auto pivot = a[row * cols + col];
        for (std::size_t r = reduced ? 0 : row + 1; r < rows; ++r) {
            if (r == row) continue;
            const auto& lead = a[r * cols + col];
            if (ops.is_zero(lead)) continue;
            const auto factor = reduced ? lead : ops.div(lead, pivot);
            for (std::size_t c = col + 1; c < cols; ++c) {
                a[r * cols + c] = ops.sub(a[r * cols + c], ops.mul(factor, a[row * cols + c]));
            }
            a[r * cols + col] = ops.zero();
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Gauss-Jordan on [A | Y]; returns X with A X = Y.
template <class Ops>
Matrix gauss_jordan(const Ops& ops, const Matrix& a, const Matrix& y) {
    const std::size_t n = a.rows();
    const std::size_t m = y.cols();
    const std::size_t width = n + m;
    const auto& av = detail::values<Ops>(a);
    const auto& yv = detail::values<Ops>(y);
    std::vector<typename Ops::value_type> work(n * width, ops.zero());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) work[r * width + c] = av[r * n + c];
        for (std::size_t c = 0; c < m; ++c) work[r * width + n + c] = yv[r * m + c];
    }
    const auto pivots = row_reduce(ops, work, n, width, n, true);
    if (pivots.size() < n) {
        throw SingularMatrixError("matrix is singular (rank " + std::to_string(pivots.size()) + " < " +
                                  std::to_string(n) + ")");
    }
    Matrix x(a.domain(), n, m);
    auto& xv = detail::values<Ops>(x);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < m; ++c) xv[r * m + c] = work[r * width + n + c];
    }
    return x;
}

} // namespace

std::size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    return detail::with_ops(m.domain(), [&](auto ops) {
        auto work = detail::values<decltype(ops)>(m);
        return row_reduce(ops, work, m.rows(), m.cols(), m.cols(), false).size();
    });
}

RowEchelon reduced_row_echelon(const Matrix& m) {
    RowEchelon out{m, {}};
    if (m.empty()) return out;
    detail::with_ops(m.domain(), [&](auto ops) {
        auto& work = detail::values<decltype(ops)>(out.reduced);
        out.pivot_columns = row_reduce(ops, work, m.rows(), m.cols(), m.cols(), true);
    });
    return out;
}

Matrix row_space_basis(const Matrix& m) {
    const auto echelon = reduced_row_echelon(m);
    return echelon.reduced.block(0, 0, echelon.pivot_columns.size(), m.cols());
}

Matrix solve(const Matrix& a, const Matrix& y) {
    if (!a.is_square()) throw DimensionError("solve: coefficient matrix must be square");
    if (y.rows() != a.rows()) throw DimensionError("solve: right-hand side has wrong row count");
    if (!(a.domain() == y.domain())) throw DomainMismatchError("solve: domain mismatch");
    return detail::with_ops(a.domain(), [&](auto ops) { return gauss_jordan(ops, a, y); });
}

Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("inverse: matrix must be square");
    return solve(m, Matrix::identity(m.domain(), m.rows()));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    if (!(a.domain() == b.domain())) throw DomainMismatchError("kron: domain mismatch");
    Matrix out(a.domain(), a.rows() * b.rows(), a.cols() * b.cols());
    detail::with_ops(a.domain(), [&](auto ops) {
        using Ops = decltype(ops);
        const auto& av = detail::values<Ops>(a);
        const auto& bv = detail::values<Ops>(b);
        auto& ov = detail::values<Ops>(out);
        const std::size_t oc = out.cols();
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                const auto& aij = av[i * a.cols() + j];
                if (ops.is_zero(aij)) continue;
                for (std::size_t r = 0; r < b.rows(); ++r) {
                    for (std::size_t c = 0; c < b.cols(); ++c) {
                        ov[(i * b.rows() + r) * oc + j * b.cols() + c] = ops.mul(aij, bv[r * b.cols() + c]);
                    }
                }
            }
        }
    });
    return out;
}

bool has_full_column_rank(const Matrix& m) { return rank(m) == m.cols(); }

} // namespace repalign
