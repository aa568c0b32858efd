#pragma once

// Independent reference computations for the tests. Nothing here goes through
// the library's elimination code: determinants are cofactor expansions and
// ranks are the size of the largest nonvanishing minor. Only usable on small
// matrices.

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "repalign/mds_code.hpp"

namespace oracle {

using Grid = std::vector<std::vector<mpq_class>>;

/// Entries as exact rationals; prime-field residues are taken as integers.
inline Grid to_grid(const repalign::Matrix& m) {
    Grid g(m.rows(), std::vector<mpq_class>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const auto v = m.at(r, c);
            if (auto* u = std::get_if<std::uint64_t>(&v)) {
                g[r][c] = mpq_class(mpz_class(std::to_string(*u)));
            } else if (auto* q = std::get_if<mpq_class>(&v)) {
                g[r][c] = *q;
            } else {
                throw std::invalid_argument("oracles are exact only");
            }
        }
    }
    return g;
}

/// Laplace expansion along the first row.
inline mpq_class determinant(const Grid& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    mpq_class total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        Grid minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<mpq_class> row;
            for (std::size_t c = 0; c < n; ++c) {
                if (c != j) row.push_back(a[r][c]);
            }
            minor.push_back(std::move(row));
        }
        const mpq_class term = a[0][j] * determinant(minor);
        total += (j % 2 == 0) ? term : mpq_class(-term);
    }
    return total;
}

/// A rational determinant reduced mod p (the integer case only).
inline bool vanishes(const mpq_class& det, std::optional<std::uint64_t> p) {
    if (!p) return det == 0;
    mpz_class num = det.get_num();
    mpz_class r = num % mpz_class(std::to_string(*p));
    return r == 0;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

/// Largest r such that some r x r minor is nonzero (mod p when given).
/// Integer entries are required for the mod-p case, which the prime-field
/// conversion above guarantees.
inline std::size_t rank(const Grid& a, std::optional<std::uint64_t> p = std::nullopt) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t r = std::min(rows, cols); r > 0; --r) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, r, 0, cur, rs);
        subsets(cols, r, 0, cur, cs);
        for (const auto& ri : rs) {
            for (const auto& ci : cs) {
                Grid minor(r, std::vector<mpq_class>(r));
                for (std::size_t x = 0; x < r; ++x) {
                    for (std::size_t y = 0; y < r; ++y) minor[x][y] = a[ri[x]][ci[y]];
                }
                if (!vanishes(determinant(minor), p)) return r;
            }
        }
    }
    return 0;
}

inline std::size_t rank(const repalign::Matrix& m) {
    std::optional<std::uint64_t> p;
    if (m.domain().is_prime_field()) p = m.domain().modulus();
    return rank(to_grid(m), p);
}

/// Every vector of GF(p)^len as a column, in base-p counting order.
inline std::vector<repalign::Matrix> all_vectors(const repalign::Domain& field, std::size_t len) {
    std::vector<repalign::Matrix> out;
    const std::uint64_t p = field.modulus();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        repalign::Matrix v(field, len, 1);
        std::uint64_t x = idx;
        for (std::size_t i = len; i > 0; --i) {
            v.set(i - 1, 0, x % p);
            x /= p;
        }
        out.push_back(std::move(v));
    }
    return out;
}

struct RepairOptimum {
    bool found = false;
    std::size_t min_sum = 0;
    std::size_t min_max = 0;
    std::uint64_t sum_optimal_tuples = 0; ///< raw (unnormalized) tuples reaching min_sum
    std::uint64_t max_optimal_tuples = 0; ///< raw tuples reaching min_max
};

/// Raw enumeration of every nonzero repair vector per parity (beta = 1 only),
/// with ranks from the minor oracle. Tracks both the sum objective of the
/// repair problem and the max objective of the beamforming problem.
inline RepairOptimum brute_force_repair(const repalign::MdsCode& code, std::size_t i) {
    if (code.beta() != 1 || !code.domain().is_prime_field()) throw std::invalid_argument("beta = 1 over GF(p) only");
    const std::size_t slots = code.parity_count();
    std::vector<repalign::Matrix> vectors;
    for (auto& v : all_vectors(code.domain(), code.node_size())) {
        if (!v.is_zero()) vectors.push_back(std::move(v));
    }
    RepairOptimum best;
    std::vector<std::size_t> idx(slots, 0);
    for (;;) {
        auto space = [&](std::size_t u) {
            std::vector<repalign::Matrix> cols;
            for (std::size_t p = 0; p < slots; ++p) cols.push_back(code.block(u, p + 1) * vectors[idx[p]]);
            return repalign::Matrix::hstack(cols);
        };
        if (rank(space(i)) == code.node_size()) {
            std::size_t sum = 0, worst = 0;
            for (std::size_t u = 1; u <= code.k(); ++u) {
                if (u == i) continue;
                const auto r = rank(space(u));
                sum += r;
                worst = std::max(worst, r);
            }
            if (!best.found || sum < best.min_sum) {
                best.min_sum = sum;
                best.sum_optimal_tuples = 0;
            }
            if (!best.found || worst < best.min_max) {
                best.min_max = worst;
                best.max_optimal_tuples = 0;
            }
            best.found = true;
            if (sum == best.min_sum) ++best.sum_optimal_tuples;
            if (worst == best.min_max) ++best.max_optimal_tuples;
        }
        std::size_t s = slots;
        while (s > 0 && ++idx[s - 1] == vectors.size()) idx[--s] = 0;
        if (s == 0) break;
    }
    return best;
}

} // namespace oracle
