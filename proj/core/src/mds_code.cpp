#include "repalign/mds_code.hpp"

#include <atomic>
#include <iostream>
#include <string>
#include <thread>

#include "repalign/errors.hpp"
#include "repalign/linalg.hpp"

namespace repalign {

MdsCode::MdsCode(std::size_t n, std::size_t k, std::size_t beta, Domain domain,
                 std::vector<std::vector<Matrix>> blocks)
    : n_(n), k_(k), beta_(beta), domain_(std::move(domain)), blocks_(std::move(blocks)) {
    if (k_ < 1 || k_ >= n_) throw PreconditionError("MDS code needs 1 <= k < n");
    if (beta_ < 1) throw PreconditionError("subpacketization beta must be >= 1");
    if (blocks_.size() != k_) throw DimensionError("code must have k block rows");
    const std::size_t side = node_size();
    for (const auto& row : blocks_) {
        if (row.size() != parity_count()) throw DimensionError("code must have n-k block columns");
        for (const auto& b : row) {
            if (!(b.domain() == domain_)) throw DomainMismatchError("code block outside the code's domain");
            if (b.rows() != side || b.cols() != side) {
                throw DimensionError("code blocks must be " + std::to_string(side) + "x" + std::to_string(side));
            }
        }
    }
}

const Matrix& MdsCode::block(std::size_t piece, std::size_t parity) const {
    if (piece < 1 || piece > k_ || parity < 1 || parity > parity_count()) {
        throw PreconditionError("block index out of range");
    }
    return blocks_[piece - 1][parity - 1];
}

Matrix MdsCode::coding_matrix() const {
    std::vector<Matrix> rows;
    rows.reserve(k_);
    for (const auto& row : blocks_) rows.push_back(Matrix::hstack(row));
    return Matrix::vstack(rows);
}

bool MdsCode::all_blocks_diagonal() const {
    for (const auto& row : blocks_) {
        for (const auto& b : row) {
            if (!b.is_diagonal()) return false;
        }
    }
    return true;
}

namespace {

void check_generation_params(std::size_t n, std::size_t k, std::size_t beta, const Domain& domain) {
    if (k < 1 || k >= n) throw PreconditionError("code generation needs 1 <= k < n");
    if (beta < 1) throw PreconditionError("code generation needs beta >= 1");
    if (!domain.is_exact()) throw PreconditionError("codes are generated over exact domains only");
    if (domain.is_prime_field() && domain.modulus() < n) {
        std::clog << "warning: GF(" << domain.modulus() << ") is smaller than n = " << n
                  << "; an MDS code may not exist\n";
    }
}

template <class BlockFn>
MdsCode generate(std::size_t n, std::size_t k, std::size_t beta, const Domain& domain, std::uint64_t seed,
                 const GenerationOptions& options, BlockFn&& draw_block) {
    check_generation_params(n, k, beta, domain);
    Sampler sampler(seed, options.sampling);
    const std::size_t side = (n - k) * beta;
    for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
        std::vector<std::vector<Matrix>> blocks(k);
        for (auto& row : blocks) {
            row.reserve(n - k);
            for (std::size_t p = 0; p < n - k; ++p) row.push_back(draw_block(sampler, side));
        }
        MdsCode code(n, k, beta, domain, std::move(blocks));
        if (is_mds(code, options.jobs)) return code;
    }
    throw GenerationFailedError("no MDS (" + std::to_string(n) + "," + std::to_string(k) + ")_" +
                                std::to_string(beta) + " code over " + domain.to_string() + " after " +
                                std::to_string(options.max_attempts) + " attempts");
}

} // namespace

MdsCode generate_random_code(std::size_t n, std::size_t k, std::size_t beta, const Domain& domain,
                             std::uint64_t seed, const GenerationOptions& options) {
    return generate(n, k, beta, domain, seed, options,
                    [&](Sampler& s, std::size_t side) { return s.matrix(domain, side, side); });
}

MdsCode generate_diagonal_code(std::size_t n, std::size_t k, std::size_t beta, const Domain& domain,
                               std::uint64_t seed, const GenerationOptions& options) {
    return generate(n, k, beta, domain, seed, options,
                    [&](Sampler& s, std::size_t side) { return s.diagonal(domain, side); });
}

FileVector random_file(const MdsCode& code, std::uint64_t seed, const SamplingOptions& sampling) {
    Sampler sampler(seed, sampling);
    FileVector file;
    for (std::size_t i = 0; i < code.k(); ++i) file.pieces.push_back(sampler.matrix(code.domain(), code.node_size(), 1));
    return file;
}

std::vector<NodeContent> encode(const MdsCode& code, const FileVector& file) {
    if (file.pieces.size() != code.k()) throw DimensionError("file must have k pieces");
    for (const auto& f : file.pieces) {
        if (!(f.domain() == code.domain())) throw DomainMismatchError("file piece outside the code's domain");
        if (f.rows() != code.node_size() || f.cols() != 1) throw DimensionError("file piece has wrong length");
    }
    std::vector<NodeContent> nodes;
    nodes.reserve(code.n());
    for (std::size_t i = 1; i <= code.k(); ++i) nodes.push_back({NodeKind::systematic, i, file.pieces[i - 1]});
    for (std::size_t p = 1; p <= code.parity_count(); ++p) {
        Matrix acc(code.domain(), code.node_size(), 1);
        for (std::size_t i = 1; i <= code.k(); ++i) acc = acc + code.block(i, p).transpose() * file.pieces[i - 1];
        nodes.push_back({NodeKind::parity, p, std::move(acc)});
    }
    return nodes;
}

Matrix node_coefficients(const MdsCode& code, NodeKind kind, std::size_t index) {
    const std::size_t a = code.node_size();
    std::vector<Matrix> parts;
    parts.reserve(code.k());
    if (kind == NodeKind::systematic) {
        if (index < 1 || index > code.k()) throw PreconditionError("systematic node index out of range");
        for (std::size_t i = 1; i <= code.k(); ++i) {
            parts.push_back(i == index ? Matrix::identity(code.domain(), a) : Matrix(code.domain(), a, a));
        }
    } else {
        if (index < 1 || index > code.parity_count()) throw PreconditionError("parity node index out of range");
        for (std::size_t i = 1; i <= code.k(); ++i) parts.push_back(code.block(i, index).transpose());
    }
    return Matrix::hstack(parts);
}

namespace {

struct NodeRef {
    NodeKind kind;
    std::size_t index;
};

std::vector<NodeRef> all_nodes(const MdsCode& code) {
    std::vector<NodeRef> nodes;
    for (std::size_t i = 1; i <= code.k(); ++i) nodes.push_back({NodeKind::systematic, i});
    for (std::size_t p = 1; p <= code.parity_count(); ++p) nodes.push_back({NodeKind::parity, p});
    return nodes;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

} // namespace

bool is_mds(const MdsCode& code, std::size_t jobs) {
    std::vector<Matrix> coefficients;
    for (const auto& node : all_nodes(code)) coefficients.push_back(node_coefficients(code, node.kind, node.index));
    const auto subsets = k_subsets(code.n(), code.k());

    auto subset_ok = [&](const std::vector<std::size_t>& subset) {
        std::vector<Matrix> rows;
        rows.reserve(subset.size());
        for (auto s : subset) rows.push_back(coefficients[s]);
        const Matrix stacked = Matrix::vstack(rows);
        return rank(stacked) == stacked.rows();
    };

    jobs = std::max<std::size_t>(1, std::min(jobs, subsets.size()));
    if (jobs == 1) {
        for (const auto& s : subsets) {
            if (!subset_ok(s)) return false;
        }
        return true;
    }
    std::atomic<bool> ok{true};
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> workers;
        for (std::size_t j = 0; j < jobs; ++j) {
            workers.emplace_back([&] {
                for (std::size_t s = next++; s < subsets.size() && ok.load(); s = next++) {
                    if (!subset_ok(subsets[s])) ok = false;
                }
            });
        }
    }
    return ok.load();
}

FileVector decode(const MdsCode& code, std::span<const NodeContent> nodes) {
    if (nodes.size() != code.k()) throw DimensionError("decode needs exactly k node contents");
    std::vector<Matrix> coefficient_rows;
    std::vector<Matrix> data_rows;
    for (const auto& node : nodes) {
        if (node.data.rows() != code.node_size() || node.data.cols() != 1) {
            throw DimensionError("node content has wrong length");
        }
        coefficient_rows.push_back(node_coefficients(code, node.kind, node.index));
        data_rows.push_back(node.data);
    }
    const Matrix file = solve(Matrix::vstack(coefficient_rows), Matrix::vstack(data_rows));
    FileVector out;
    for (std::size_t i = 0; i < code.k(); ++i) {
        out.pieces.push_back(file.block(i * code.node_size(), 0, code.node_size(), 1));
    }
    return out;
}

std::vector<std::size_t> permuted_piece_order(std::size_t k, std::size_t i) {
    if (i < 1 || i > k) throw PreconditionError("piece index out of range");
    std::vector<std::size_t> order{i};
    for (std::size_t u = 1; u <= k; ++u) {
        if (u != i) order.push_back(u);
    }
    return order;
}

Matrix node_permutation(const MdsCode& code, std::size_t i) {
    const auto order = permuted_piece_order(code.k(), i);
    const Matrix id = Matrix::identity(code.domain(), code.node_size());
    std::vector<Matrix> rows;
    rows.reserve(order.size());
    for (auto u : order) {
        Matrix e(code.domain(), code.k(), 1);
        e.set(u - 1, 0, code.domain().one());
        rows.push_back(kron(e, id).transpose()); // E_u^T
    }
    return Matrix::vstack(rows);
}

std::vector<std::vector<Matrix>> permuted_blocks(const MdsCode& code, std::size_t i) {
    std::vector<std::vector<Matrix>> out;
    for (auto u : permuted_piece_order(code.k(), i)) out.push_back(code.blocks()[u - 1]);
    return out;
}

} // namespace repalign
