#include "repalign/repair.hpp"

#include <numeric>
#include <string>

#include "repalign/errors.hpp"
#include "repalign/linalg.hpp"

namespace repalign {

RepairStrategy::RepairStrategy(std::size_t failed_node, std::vector<Matrix> matrices,
                               std::optional<Provenance> provenance)
    : failed_node_(failed_node), matrices_(std::move(matrices)), provenance_(std::move(provenance)) {
    if (failed_node_ < 1) throw PreconditionError("failed node index is 1-based");
    if (matrices_.empty()) throw DimensionError("repair strategy needs one matrix per parity");
    const auto& first = matrices_.front();
    if (first.cols() == 0 || first.rows() < first.cols()) {
        throw DimensionError("repair matrices must be tall: (n-k)beta x beta");
    }
    for (const auto& r : matrices_) {
        if (!(r.domain() == first.domain())) throw DomainMismatchError("repair matrices must share a domain");
        if (r.rows() != first.rows() || r.cols() != first.cols()) {
            throw DimensionError("repair matrices must share a shape");
        }
        if (!has_full_column_rank(r)) {
            throw PreconditionError("repair matrix is not full column rank; it would waste downloads");
        }
    }
}

std::size_t RepairReport::interference_sum() const {
    return std::accumulate(interference_ranks.begin(), interference_ranks.end(), std::size_t{0});
}

std::size_t RepairReport::total_download() const { return parity_download + interference_sum(); }

namespace {

void check_repair_shape(const MdsCode& code, std::span<const Matrix> r) {
    if (r.size() != code.parity_count()) {
        throw DimensionError("expected " + std::to_string(code.parity_count()) + " repair matrices, got " +
                             std::to_string(r.size()));
    }
    for (const auto& m : r) {
        if (!(m.domain() == code.domain())) throw DomainMismatchError("repair matrix outside the code's domain");
        if (m.rows() != code.node_size() || m.cols() != code.beta()) {
            throw DimensionError("repair matrices must be " + std::to_string(code.node_size()) + "x" +
                                 std::to_string(code.beta()));
        }
    }
}

void check_strategy(const MdsCode& code, const RepairStrategy& s) {
    if (s.failed_node() > code.k()) throw PreconditionError("failed node must be systematic (1..k)");
    check_repair_shape(code, s.matrices());
}

} // namespace

std::vector<Matrix> parity_transmissions(const MdsCode& code, std::span<const Matrix> repair_matrices) {
    check_repair_shape(code, repair_matrices);
    std::vector<Matrix> out;
    out.reserve(code.parity_count());
    for (std::size_t p = 1; p <= code.parity_count(); ++p) {
        std::vector<Matrix> cols;
        cols.reserve(code.k());
        for (std::size_t u = 1; u <= code.k(); ++u) cols.push_back(code.block(u, p) * repair_matrices[p - 1]);
        out.push_back(Matrix::vstack(cols).transpose());
    }
    return out;
}

std::vector<Matrix> parity_transmissions(const MdsCode& code, const RepairStrategy& strategy) {
    check_strategy(code, strategy);
    return parity_transmissions(code, std::span<const Matrix>(strategy.matrices()));
}

Matrix repair_space(const MdsCode& code, std::span<const Matrix> repair_matrices, std::size_t piece) {
    check_repair_shape(code, repair_matrices);
    std::vector<Matrix> cols;
    cols.reserve(code.parity_count());
    for (std::size_t p = 1; p <= code.parity_count(); ++p) cols.push_back(code.block(piece, p) * repair_matrices[p - 1]);
    return Matrix::hstack(cols);
}

bool repair_feasible(const MdsCode& code, const RepairStrategy& strategy) {
    check_strategy(code, strategy);
    return rank(repair_space(code, strategy.matrices(), strategy.failed_node())) == code.node_size();
}

std::size_t interference_rank(const MdsCode& code, const RepairStrategy& strategy, std::size_t u) {
    check_strategy(code, strategy);
    if (u == strategy.failed_node()) throw PreconditionError("interference rank is undefined for the failed piece");
    if (u < 1 || u > code.k()) throw PreconditionError("piece index out of range");
    return rank(repair_space(code, strategy.matrices(), u));
}

RepairReport evaluate_repair(const MdsCode& code, const RepairStrategy& strategy) {
    check_strategy(code, strategy);
    RepairReport report;
    report.failed_node = strategy.failed_node();
    report.parity_download = code.node_size();
    report.feasible = repair_feasible(code, strategy);
    for (std::size_t u = 1; u <= code.k(); ++u) {
        if (u == strategy.failed_node()) continue;
        const auto r = rank(repair_space(code, strategy.matrices(), u));
        report.interference_nodes.push_back(u);
        report.interference_ranks.push_back(r);
        report.systematic_downloads.push_back(r);
    }
    report.overhead = Rational(static_cast<unsigned long>(code.node_size() + report.interference_sum()),
                               static_cast<unsigned long>(code.node_size()));
    report.overhead.canonicalize();
    return report;
}

Rational repair_overhead(const MdsCode& code, const RepairStrategy& strategy) {
    const auto report = evaluate_repair(code, strategy);
    if (!report.feasible) throw InfeasibleStrategyError("useful space is rank deficient; repair is impossible");
    return report.overhead;
}

Reconstruction reconstruct(const MdsCode& code, const RepairStrategy& strategy,
                           std::span<const NodeContent> surviving) {
    check_strategy(code, strategy);
    const std::size_t i = strategy.failed_node();
    const std::size_t alpha = code.node_size();
    if (!repair_feasible(code, strategy)) throw InfeasibleStrategyError("useful space is rank deficient");

    std::vector<const Matrix*> systematic(code.k() + 1, nullptr);
    std::vector<const Matrix*> parity(code.parity_count() + 1, nullptr);
    for (const auto& node : surviving) {
        if (!(node.data.domain() == code.domain())) throw DomainMismatchError("node content outside the code's domain");
        if (node.data.rows() != alpha || node.data.cols() != 1) throw DimensionError("node content has wrong length");
        auto& slot = node.kind == NodeKind::systematic ? systematic : parity;
        if (node.index < 1 || node.index >= slot.size()) throw PreconditionError("node index out of range");
        if (node.kind == NodeKind::systematic && node.index == i) {
            throw PreconditionError("the failed node cannot be among the survivors");
        }
        slot[node.index] = &node.data;
    }
    for (std::size_t u = 1; u <= code.k(); ++u) {
        if (u != i && systematic[u] == nullptr) throw PreconditionError("missing systematic survivor");
    }
    for (std::size_t p = 1; p <= code.parity_count(); ++p) {
        if (parity[p] == nullptr) throw PreconditionError("missing parity survivor");
    }

    Reconstruction out;
    // Parity side: beta equations from each parity node.
    std::vector<Matrix> received;
    for (std::size_t p = 1; p <= code.parity_count(); ++p) {
        received.push_back(strategy.matrix(p).transpose() * *parity[p]);
        out.parity_symbols += code.beta();
    }
    Matrix y = Matrix::vstack(received);

    // Systematic side: node u sends B_u f_u, with B_u the RREF basis of the
    // row space of its interference I_u^T; since B_u is reduced, a row x of
    // I_u^T equals sum_j x[pivot_j] * B_u[j].
    for (std::size_t u = 1; u <= code.k(); ++u) {
        if (u == i) continue;
        const Matrix interference_rows = repair_space(code, strategy.matrices(), u).transpose();
        const auto echelon = reduced_row_echelon(interference_rows);
        const std::size_t r = echelon.pivot_columns.size();
        if (r == 0) continue;
        const Matrix basis = echelon.reduced.block(0, 0, r, alpha);
        const Matrix sent = basis * *systematic[u];
        out.systematic_symbols += r;
        Matrix combine(code.domain(), alpha, r);
        for (std::size_t row = 0; row < alpha; ++row) {
            for (std::size_t j = 0; j < r; ++j) combine.set(row, j, interference_rows.at(row, echelon.pivot_columns[j]));
        }
        y = y - combine * sent;
    }

    const Matrix useful_rows = repair_space(code, strategy.matrices(), i).transpose();
    out.piece = solve(useful_rows, y);

    // Survivors must be consistent with the recovered piece.
    for (std::size_t p = 1; p <= code.parity_count(); ++p) {
        Matrix expected(code.domain(), alpha, 1);
        for (std::size_t u = 1; u <= code.k(); ++u) {
            const Matrix& f = u == i ? out.piece : *systematic[u];
            expected = expected + code.block(u, p).transpose() * f;
        }
        if (code.domain().is_exact() ? !(expected == *parity[p]) : false) {
            throw InconsistentContentsError("parity node " + std::to_string(p) +
                                            " disagrees with the other survivors");
        }
    }
    return out;
}

namespace {

RepairSearchResult exhaustive_repair(const MdsCode& code, std::size_t i, const SearchOptions& options) {
    if (!code.domain().is_prime_field()) {
        throw PreconditionError("exhaustive repair search needs a prime-field code");
    }
    const std::size_t alpha = code.node_size();
    const std::size_t slots = code.parity_count();
    const Integer per_slot = gaussian_binomial(code.domain().modulus(), alpha, code.beta());
    Integer total;
    mpz_pow_ui(total.get_mpz_t(), per_slot.get_mpz_t(), static_cast<unsigned long>(slots));
    if (total > Integer(std::to_string(options.budget))) {
        throw BudgetExceededError("exhaustive repair search needs " + total.get_str() +
                                  " candidates, budget is " + std::to_string(options.budget));
    }

    auto reps = column_space_representatives(code.domain(), alpha, code.beta());
    // products[p][u][j] = A_u^(p) * rep_j
    std::vector<std::vector<std::vector<Matrix>>> products(slots, std::vector<std::vector<Matrix>>(code.k()));
    for (std::size_t p = 0; p < slots; ++p) {
        for (std::size_t u = 0; u < code.k(); ++u) {
            products[p][u].reserve(reps.size());
            for (const auto& rep : reps) products[p][u].push_back(code.block(u + 1, p + 1) * rep);
        }
    }
    auto space = [&](std::span<const std::uint32_t> t, std::size_t u) {
        std::vector<Matrix> cols;
        cols.reserve(slots);
        for (std::size_t p = 0; p < slots; ++p) cols.push_back(products[p][u - 1][t[p]]);
        return Matrix::hstack(cols);
    };
    const TupleScore score = [&](std::span<const std::uint32_t> t) -> std::optional<std::size_t> {
        if (rank(space(t, i)) != alpha) return std::nullopt;
        std::size_t sum = 0;
        for (std::size_t u = 1; u <= code.k(); ++u) {
            if (u != i) sum += rank(space(t, u));
        }
        return sum;
    };
    auto outcome = exhaustive_tuple_search(reps.size(), slots, score, options.jobs, options.collect_optimal);
    if (!outcome.found) throw NoFeasibleSolutionError("no repair strategy satisfies the full-rank constraint");

    std::vector<Matrix> chosen;
    for (auto idx : outcome.best) chosen.push_back(reps[idx]);
    RepairStrategy strategy(i, std::move(chosen), Provenance{"exhaustive-search", 0, std::nullopt});
    auto report = evaluate_repair(code, strategy);
    RepairSearchResult result{std::move(strategy), std::move(report), outcome.evaluated, outcome.feasible,
                              std::move(outcome.optimal), {}};
    if (options.collect_optimal) result.representatives = std::move(reps);
    return result;
}

RepairSearchResult randomized_repair(const MdsCode& code, std::size_t i, const RandomizedSearch& mode,
                                     const SearchOptions& options) {
    if (mode.trials == 0) throw PreconditionError("randomized search needs at least one trial");
    if (mode.trials > options.budget) throw BudgetExceededError("trial count exceeds the budget");
    Sampler sampler(mode.seed);
    std::optional<RepairSearchResult> best;
    std::uint64_t feasible = 0;
    for (std::uint64_t t = 0; t < mode.trials; ++t) {
        std::vector<Matrix> mats;
        for (std::size_t p = 0; p < code.parity_count(); ++p) {
            Matrix r = sampler.matrix(code.domain(), code.node_size(), code.beta());
            while (!has_full_column_rank(r)) r = sampler.matrix(code.domain(), code.node_size(), code.beta());
            mats.push_back(std::move(r));
        }
        RepairStrategy candidate(i, std::move(mats), Provenance{"randomized-search", mode.seed, std::nullopt});
        auto report = evaluate_repair(code, candidate);
        if (!report.feasible) continue;
        ++feasible;
        if (!best || report.interference_sum() < best->report.interference_sum()) {
            best = RepairSearchResult{std::move(candidate), std::move(report), 0, 0, {}, {}};
        }
    }
    if (!best) throw NoFeasibleSolutionError("no sampled repair strategy satisfied the full-rank constraint");
    best->candidates = mode.trials;
    best->feasible_candidates = feasible;
    return std::move(*best);
}

} // namespace

RepairSearchResult search_optimal_repair(const MdsCode& code, std::size_t i, const RepairSearchMode& mode,
                                         const SearchOptions& options) {
    if (i < 1 || i > code.k()) throw PreconditionError("failed node must be systematic (1..k)");
    if (std::holds_alternative<ExhaustiveSearch>(mode)) return exhaustive_repair(code, i, options);
    return randomized_repair(code, i, std::get<RandomizedSearch>(mode), options);
}

} // namespace repalign
