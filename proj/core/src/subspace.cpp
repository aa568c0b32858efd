#include "repalign/subspace.hpp"

#include <algorithm>
#include <thread>

#include "repalign/errors.hpp"
#include "repalign/linalg.hpp"

namespace repalign {

Integer gaussian_binomial(std::uint64_t p, std::size_t ambient, std::size_t dim) {
    if (dim > ambient) return 0;
    Integer num = 1;
    Integer den = 1;
    Integer q;
    mpz_set_ui(q.get_mpz_t(), static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < dim; ++i) {
        Integer a, b;
        mpz_pow_ui(a.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(ambient - i));
        mpz_pow_ui(b.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(i + 1));
        num *= a - 1;
        den *= b - 1;
    }
    return num / den;
}

namespace {

void enumerate_free_entries(std::vector<std::uint64_t>& rref, std::size_t ambient,
                            const std::vector<std::pair<std::size_t, std::size_t>>& free_slots, std::size_t next,
                            std::uint64_t p, std::vector<std::vector<std::uint64_t>>& out) {
    if (next == free_slots.size()) {
        out.push_back(rref);
        return;
    }
    const auto [r, c] = free_slots[next];
    for (std::uint64_t v = 0; v < p; ++v) {
        rref[r * ambient + c] = v;
        enumerate_free_entries(rref, ambient, free_slots, next + 1, p, out);
    }
    rref[r * ambient + c] = 0;
}

} // namespace

std::vector<Matrix> column_space_representatives(const Domain& field, std::size_t ambient, std::size_t dim) {
    if (!field.is_prime_field()) throw PreconditionError("subspace enumeration needs a prime field");
    if (dim == 0 || dim > ambient) throw PreconditionError("subspace dimension must lie in [1, ambient]");
    const std::uint64_t p = field.modulus();

    std::vector<std::vector<std::uint64_t>> echelons;
    std::vector<std::size_t> pivots(dim);
    for (std::size_t i = 0; i < dim; ++i) pivots[i] = i;
    for (;;) {
        std::vector<std::uint64_t> rref(dim * ambient, 0);
        std::vector<bool> is_pivot(ambient, false);
        for (std::size_t r = 0; r < dim; ++r) {
            rref[r * ambient + pivots[r]] = 1;
            is_pivot[pivots[r]] = true;
        }
        std::vector<std::pair<std::size_t, std::size_t>> free_slots;
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = pivots[r] + 1; c < ambient; ++c) {
                if (!is_pivot[c]) free_slots.emplace_back(r, c);
            }
        }
        enumerate_free_entries(rref, ambient, free_slots, 0, p, echelons);

        // Next pivot combination in lexicographic order.
        std::size_t i = dim;
        while (i > 0 && pivots[i - 1] == ambient - dim + (i - 1)) --i;
        if (i == 0) break;
        ++pivots[i - 1];
        for (std::size_t j = i; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    std::sort(echelons.begin(), echelons.end());

    std::vector<Matrix> reps;
    reps.reserve(echelons.size());
    for (const auto& e : echelons) {
        Matrix rowform(field, dim, ambient);
        for (std::size_t i = 0; i < e.size(); ++i) rowform.set(i / ambient, i % ambient, e[i]);
        reps.push_back(rowform.transpose());
    }
    return reps;
}

Matrix canonical_column_space(const Matrix& m) { return row_space_basis(m.transpose()).transpose(); }

namespace {

void decode(std::uint64_t index, std::size_t choices, Tuple& tuple) {
    for (std::size_t s = tuple.size(); s > 0; --s) {
        tuple[s - 1] = static_cast<std::uint32_t>(index % choices);
        index /= choices;
    }
}

void advance(std::size_t choices, Tuple& tuple) {
    for (std::size_t s = tuple.size(); s > 0; --s) {
        if (++tuple[s - 1] < choices) return;
        tuple[s - 1] = 0;
    }
}

TupleSearchOutcome scan(std::uint64_t begin, std::uint64_t end, std::size_t choices, std::size_t slots,
                        const TupleScore& score, bool collect_optimal) {
    TupleSearchOutcome out;
    Tuple tuple(slots, 0);
    decode(begin, choices, tuple);
    for (std::uint64_t idx = begin; idx < end; ++idx, advance(choices, tuple)) {
        ++out.evaluated;
        const auto s = score(tuple);
        if (!s) continue;
        ++out.feasible;
        if (!out.found || *s < out.best_score) {
            out.found = true;
            out.best_score = *s;
            out.best = tuple;
            out.optimal.clear();
        }
        if (collect_optimal && *s == out.best_score) out.optimal.push_back(tuple);
    }
    return out;
}

} // namespace

TupleSearchOutcome exhaustive_tuple_search(std::size_t choices, std::size_t slots, const TupleScore& score,
                                           std::size_t jobs, bool collect_optimal) {
    if (choices == 0 || slots == 0) throw PreconditionError("empty search space");
    std::uint64_t total = 1;
    for (std::size_t s = 0; s < slots; ++s) {
        if (total > UINT64_MAX / choices) throw BudgetExceededError("search space does not fit in 64 bits");
        total *= choices;
    }
    jobs = std::max<std::size_t>(1, std::min<std::uint64_t>(jobs, total));

    std::vector<TupleSearchOutcome> parts(jobs);
    if (jobs == 1) {
        parts[0] = scan(0, total, choices, slots, score, collect_optimal);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j) {
            const std::uint64_t begin = total / jobs * j + std::min<std::uint64_t>(j, total % jobs);
            const std::uint64_t end = begin + total / jobs + (j < total % jobs ? 1 : 0);
            workers.emplace_back([&, j, begin, end] { parts[j] = scan(begin, end, choices, slots, score, collect_optimal); });
        }
    }

    TupleSearchOutcome merged;
    for (const auto& part : parts) {
        merged.evaluated += part.evaluated;
        merged.feasible += part.feasible;
        if (!part.found) continue;
        if (!merged.found || part.best_score < merged.best_score) {
            merged.found = true;
            merged.best_score = part.best_score;
            merged.best = part.best;
            merged.optimal = part.optimal;
        } else if (part.best_score == merged.best_score) {
            merged.optimal.insert(merged.optimal.end(), part.optimal.begin(), part.optimal.end());
        }
    }
    return merged;
}

} // namespace repalign
