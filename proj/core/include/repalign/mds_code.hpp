#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "repalign/matrix.hpp"
#include "repalign/random.hpp"

namespace repalign {

/// Systematic (n, k)_beta MDS storage code in block form.
///
/// `block(i, p)` is the square coding block A_i^(p) of side (n-k)*beta that
/// parity node p applies (transposed) to file piece i. Piece, parity and node
/// indices are 1-based throughout the library, matching the JSON files and the
/// CLI; matrix row/column indices are 0-based.
class MdsCode {
public:
    MdsCode(std::size_t n, std::size_t k, std::size_t beta, Domain domain, std::vector<std::vector<Matrix>> blocks);

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t beta() const noexcept { return beta_; }
    std::size_t parity_count() const noexcept { return n_ - k_; }
    /// alpha = (n-k) beta, the per-node storage and the block side.
    std::size_t node_size() const noexcept { return (n_ - k_) * beta_; }
    /// M = k (n-k) beta.
    std::size_t file_size() const noexcept { return k_ * node_size(); }
    const Domain& domain() const noexcept { return domain_; }

    const Matrix& block(std::size_t piece, std::size_t parity) const;
    const std::vector<std::vector<Matrix>>& blocks() const noexcept { return blocks_; }

    /// The full k*alpha x (n-k)*alpha matrix A.
    Matrix coding_matrix() const;
    bool all_blocks_diagonal() const;

    friend bool operator==(const MdsCode&, const MdsCode&) = default;

private:
    std::size_t n_;
    std::size_t k_;
    std::size_t beta_;
    Domain domain_;
    std::vector<std::vector<Matrix>> blocks_;
};

struct GenerationOptions {
    SamplingOptions sampling{};
    std::size_t max_attempts = 64;
    std::size_t jobs = 1;
};

/// Random code with i.i.d. block entries, resampled until `is_mds`.
/// Throws `GenerationFailedError` after `max_attempts` draws.
MdsCode generate_random_code(std::size_t n, std::size_t k, std::size_t beta, const Domain& domain,
                             std::uint64_t seed, const GenerationOptions& options = {});

/// Like `generate_random_code` but every block is diagonal with nonzero
/// diagonal entries.
MdsCode generate_diagonal_code(std::size_t n, std::size_t k, std::size_t beta, const Domain& domain,
                               std::uint64_t seed, const GenerationOptions& options = {});

struct FileVector {
    std::vector<Matrix> pieces; ///< k column vectors of length (n-k) beta
};

FileVector random_file(const MdsCode& code, std::uint64_t seed, const SamplingOptions& sampling = {});

enum class NodeKind { systematic, parity };

struct NodeContent {
    NodeKind kind;
    std::size_t index; ///< 1-based within its kind
    Matrix data;       ///< column vector of length (n-k) beta
};

/// Systematic node i stores f_i; parity p stores sum_i (A_i^(p))^T f_i.
std::vector<NodeContent> encode(const MdsCode& code, const FileVector& file);

/// Rows expressing a node's content as a linear function of the whole file
/// (alpha x M).
Matrix node_coefficients(const MdsCode& code, NodeKind kind, std::size_t index);

/// Exhaustive check that every k-subset of nodes determines the file.
bool is_mds(const MdsCode& code, std::size_t jobs = 1);

/// Recovers the file from exactly k node contents.
FileVector decode(const MdsCode& code, std::span<const NodeContent> nodes);

/// P_i: moves piece i's row block to the front, keeping the others in order.
Matrix node_permutation(const MdsCode& code, std::size_t i);

/// The block grid of P_i A, i.e. block rows in the order (i, 1, ..., i-1, i+1, ..., k).
std::vector<std::vector<Matrix>> permuted_blocks(const MdsCode& code, std::size_t i);

/// Piece order used by P_i: i first, then the rest ascending.
std::vector<std::size_t> permuted_piece_order(std::size_t k, std::size_t i);

} // namespace repalign
