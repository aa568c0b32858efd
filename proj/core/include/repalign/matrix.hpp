#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "repalign/domain.hpp"

namespace repalign {

/// Dense row-major matrix over a runtime-selected scalar domain.
///
/// Entries are always stored canonically (residues reduced mod p, fractions in
/// lowest terms), so structural equality is mathematical equality in the exact
/// domains. Values are immutable in practice: every algebraic operation returns
/// a new matrix.
class Matrix {
public:
    using Storage = std::variant<std::vector<std::uint64_t>, std::vector<Rational>, std::vector<double>>;

    /// Empty 0x0 rational matrix.
    Matrix();
    /// Zero matrix.
    Matrix(const Domain& domain, std::size_t rows, std::size_t cols);

    static Matrix identity(const Domain& domain, std::size_t n);
    static Matrix from_integers(const Domain& domain, std::size_t rows, std::size_t cols,
                                std::span<const long long> row_major);
    static Matrix from_rows(const Domain& domain, std::initializer_list<std::initializer_list<long long>> rows);
    static Matrix column_vector(const Domain& domain, std::initializer_list<long long> values);
    static Matrix from_scalars(const Domain& domain, std::size_t rows, std::size_t cols,
                               const std::vector<Scalar>& row_major);
    static Matrix diagonal(const Domain& domain, const std::vector<Scalar>& diag);
    /// Concatenation; all parts must share domain and row count (resp. column count).
    static Matrix hstack(std::span<const Matrix> parts);
    static Matrix vstack(std::span<const Matrix> parts);

    const Domain& domain() const noexcept { return domain_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Scalar at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Scalar value);
    /// Entry as a double, whatever the domain (residues map to their
    /// representative in [0, p)).
    double approx(std::size_t r, std::size_t c) const;

    Matrix transpose() const;
    Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
    Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }
    Matrix row(std::size_t r) const { return block(r, 0, 1, cols_); }
    Matrix scaled(const Scalar& factor) const;

    bool is_zero() const;
    bool is_diagonal() const;

    /// Re-expresses the matrix in another domain. Exact -> float is always
    /// allowed; rational -> prime field needs invertible denominators; float
    /// -> exact is rejected.
    Matrix convert_to(const Domain& target) const;

    const Storage& storage() const noexcept { return data_; }
    Storage& storage() noexcept { return data_; }

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    Domain domain_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Storage data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

} // namespace repalign
