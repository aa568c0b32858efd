#include "repalign/matrix.hpp"

#include <ostream>
#include <string>

#include "field_ops.hpp"

namespace repalign {

namespace {

Matrix::Storage zero_storage(const Domain& domain, std::size_t count) {
    return detail::with_ops(domain, [count](auto ops) -> Matrix::Storage {
        using T = typename decltype(ops)::value_type;
        return std::vector<T>(count, ops.zero());
    });
}

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_same_domain(const Matrix& a, const Matrix& b, const char* what) {
    if (!(a.domain() == b.domain())) {
        throw DomainMismatchError(std::string(what) + ": operands live in " + a.domain().to_string() + " and " +
                                  b.domain().to_string());
    }
}

} // namespace

Matrix::Matrix() : Matrix(Domain::rational(), 0, 0) {}

Matrix::Matrix(const Domain& domain, std::size_t rows, std::size_t cols)
    : domain_(domain), rows_(rows), cols_(cols), data_(zero_storage(domain, rows * cols)) {}

Matrix Matrix::identity(const Domain& domain, std::size_t n) {
    Matrix m(domain, n, n);
    detail::with_ops(domain, [&](auto ops) {
        auto& v = detail::values<decltype(ops)>(m);
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = ops.one();
    });
    return m;
}

Matrix Matrix::from_integers(const Domain& domain, std::size_t rows, std::size_t cols,
                             std::span<const long long> row_major) {
    if (row_major.size() != rows * cols) {
        throw DimensionError("from_integers: expected " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(row_major.size()));
    }
    Matrix m(domain, rows, cols);
    for (std::size_t i = 0; i < row_major.size(); ++i) m.set(i / cols, i % cols, domain.from_integer(row_major[i]));
    return m;
}

Matrix Matrix::from_rows(const Domain& domain, std::initializer_list<std::initializer_list<long long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<long long> flat;
    flat.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("from_rows: ragged rows");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return from_integers(domain, r, c, flat);
}

Matrix Matrix::column_vector(const Domain& domain, std::initializer_list<long long> values) {
    const std::vector<long long> flat(values);
    return from_integers(domain, flat.size(), 1, flat);
}

Matrix Matrix::from_scalars(const Domain& domain, std::size_t rows, std::size_t cols,
                            const std::vector<Scalar>& row_major) {
    if (row_major.size() != rows * cols) {
        throw DimensionError("from_scalars: expected " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(row_major.size()));
    }
    Matrix m(domain, rows, cols);
    for (std::size_t i = 0; i < row_major.size(); ++i) m.set(i / cols, i % cols, row_major[i]);
    return m;
}

Matrix Matrix::diagonal(const Domain& domain, const std::vector<Scalar>& diag) {
    Matrix m(domain, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
    return m;
}

Matrix Matrix::hstack(std::span<const Matrix> parts) {
    if (parts.empty()) throw DimensionError("hstack of nothing");
    const auto& first = parts.front();
    std::size_t total = 0;
    for (const auto& p : parts) {
        require_same_domain(first, p, "hstack");
        if (p.rows() != first.rows()) throw DimensionError("hstack: row counts differ");
        total += p.cols();
    }
    Matrix out(first.domain(), first.rows(), total);
    detail::with_ops(first.domain(), [&](auto ops) {
        using Ops = decltype(ops);
        auto& dst = detail::values<Ops>(out);
        std::size_t offset = 0;
        for (const auto& p : parts) {
            const auto& src = detail::values<Ops>(p);
            for (std::size_t r = 0; r < p.rows(); ++r) {
                for (std::size_t c = 0; c < p.cols(); ++c) dst[r * total + offset + c] = src[r * p.cols() + c];
            }
            offset += p.cols();
        }
    });
    return out;
}

Matrix Matrix::vstack(std::span<const Matrix> parts) {
    if (parts.empty()) throw DimensionError("vstack of nothing");
    const auto& first = parts.front();
    std::size_t total = 0;
    for (const auto& p : parts) {
        require_same_domain(first, p, "vstack");
        if (p.cols() != first.cols()) throw DimensionError("vstack: column counts differ");
        total += p.rows();
    }
    Matrix out(first.domain(), total, first.cols());
    detail::with_ops(first.domain(), [&](auto ops) {
        using Ops = decltype(ops);
        auto& dst = detail::values<Ops>(out);
        std::size_t offset = 0;
        for (const auto& p : parts) {
            const auto& src = detail::values<Ops>(p);
            std::copy(src.begin(), src.end(), dst.begin() + static_cast<std::ptrdiff_t>(offset));
            offset += src.size();
        }
    });
    return out;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw DimensionError("index out of range on " + shape(*this));
    return std::visit([&](const auto& v) -> Scalar { return v[r * cols_ + c]; }, data_);
}

void Matrix::set(std::size_t r, std::size_t c, Scalar value) {
    if (r >= rows_ || c >= cols_) throw DimensionError("index out of range on " + shape(*this));
    value = domain_.canonical(std::move(value));
    std::visit(
        [&](auto& v) {
            using T = typename std::decay_t<decltype(v)>::value_type;
            v[r * cols_ + c] = std::get<T>(std::move(value));
        },
        data_);
}

double Matrix::approx(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw DimensionError("index out of range on " + shape(*this));
    return std::visit(
        [&](const auto& v) -> double {
            using T = typename std::decay_t<decltype(v)>::value_type;
            if constexpr (std::is_same_v<T, Rational>) {
                return v[r * cols_ + c].get_d();
            } else {
                return static_cast<double>(v[r * cols_ + c]);
            }
        },
        data_);
}

Matrix Matrix::transpose() const {
    Matrix out(domain_, cols_, rows_);
    std::visit(
        [&](const auto& src) {
            using T = typename std::decay_t<decltype(src)>::value_type;
            auto& dst = std::get<std::vector<T>>(out.data_);
            for (std::size_t r = 0; r < rows_; ++r) {
                for (std::size_t c = 0; c < cols_; ++c) dst[c * rows_ + r] = src[r * cols_ + c];
            }
        },
        data_);
    return out;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) {
        throw DimensionError("block out of range on " + shape(*this));
    }
    Matrix out(domain_, nrows, ncols);
    std::visit(
        [&](const auto& src) {
            using T = typename std::decay_t<decltype(src)>::value_type;
            auto& dst = std::get<std::vector<T>>(out.data_);
            for (std::size_t r = 0; r < nrows; ++r) {
                for (std::size_t c = 0; c < ncols; ++c) dst[r * ncols + c] = src[(row0 + r) * cols_ + col0 + c];
            }
        },
        data_);
    return out;
}

Matrix Matrix::scaled(const Scalar& factor) const {
    const Scalar f = domain_.canonical(factor);
    Matrix out(*this);
    detail::with_ops(domain_, [&](auto ops) {
        using Ops = decltype(ops);
        const auto& k = std::get<typename Ops::value_type>(f);
        for (auto& x : detail::values<Ops>(out)) x = ops.mul(x, k);
    });
    return out;
}

bool Matrix::is_zero() const {
    return detail::with_ops(domain_, [&](auto ops) {
        for (const auto& x : detail::values<decltype(ops)>(*this)) {
            if (!ops.is_zero(x)) return false;
        }
        return true;
    });
}

bool Matrix::is_diagonal() const {
    if (!is_square()) return false;
    return detail::with_ops(domain_, [&](auto ops) {
        const auto& v = detail::values<decltype(ops)>(*this);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                if (r != c && !ops.is_zero(v[r * cols_ + c])) return false;
            }
        }
        return true;
    });
}

Matrix Matrix::convert_to(const Domain& target) const {
    if (target == domain_) return *this;
    if (!domain_.is_exact() && target.is_exact()) {
        throw DomainMismatchError("cannot convert a float matrix into exact domain " + target.to_string());
    }
    Matrix out(target, rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            const Scalar v = at(r, c);
            if (const auto* q = std::get_if<Rational>(&v)) {
                out.set(r, c, target.from_rational(*q));
            } else if (const auto* u = std::get_if<std::uint64_t>(&v)) {
                // Residues carry their [0, p) representative into the target.
                out.set(r, c, target.from_rational(Rational(static_cast<unsigned long>(*u))));
            } else {
                out.set(r, c, v);
            }
        }
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_domain(a, b, "matrix +");
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix +: " + shape(a) + " vs " + shape(b));
    }
    Matrix out(a);
    detail::with_ops(a.domain(), [&](auto ops) {
        using Ops = decltype(ops);
        auto& dst = detail::values<Ops>(out);
        const auto& src = detail::values<Ops>(b);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = ops.add(dst[i], src[i]);
    });
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_domain(a, b, "matrix -");
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix -: " + shape(a) + " vs " + shape(b));
    }
    Matrix out(a);
    detail::with_ops(a.domain(), [&](auto ops) {
        using Ops = decltype(ops);
        auto& dst = detail::values<Ops>(out);
        const auto& src = detail::values<Ops>(b);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = ops.sub(dst[i], src[i]);
    });
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_domain(a, b, "matrix *");
    if (a.cols() != b.rows()) throw DimensionError("matrix *: " + shape(a) + " times " + shape(b));
    Matrix out(a.domain(), a.rows(), b.cols());
    detail::with_ops(a.domain(), [&](auto ops) {
        using Ops = decltype(ops);
        const auto& x = detail::values<Ops>(a);
        const auto& y = detail::values<Ops>(b);
        auto& z = detail::values<Ops>(out);
        const std::size_t n = a.cols();
        const std::size_t m = b.cols();
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t l = 0; l < n; ++l) {
                const auto& xil = x[i * n + l];
                if (ops.is_zero(xil)) continue;
                for (std::size_t j = 0; j < m; ++j) z[i * m + j] = ops.add(z[i * m + j], ops.mul(xil, y[l * m + j]));
            }
        }
    });
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.domain() == b.domain() && a.rows() == b.rows() && a.cols() == b.cols() && a.storage() == b.storage();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[" << m.domain().to_string() << " " << m.rows() << "x" << m.cols() << "]";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << "\n ";
        for (std::size_t c = 0; c < m.cols(); ++c) os << ' ' << scalar_to_string(m.at(r, c));
    }
    return os;
}

} // namespace repalign
