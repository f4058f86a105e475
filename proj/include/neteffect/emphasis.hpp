#pragma once

#include <cstdint>
#include <vector>

#include "neteffect/types.hpp"

namespace neteffect {

struct WalkConfig {
    int length = 4;       // steps per walk
    int trials = 10;      // walks per start node
    int rank = 256;       // embedding dimension
    std::uint64_t seed = 0;
    bool backtracking_allowed = false;

    void validate() const;
};

/// Rows are the left singular vectors scaled by the square root of the
/// singular values, one row per node.
struct NodeEmbedding {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  // row-major
    bool rank_reduced = false;   // requested rank exceeded the achievable one

    const double* row(std::size_t i) const { return values.data() + i * cols; }
};

/// Visit counts from `trials` walks of up to `length` steps per start node.
/// The start node itself is not counted, revisits are counted each time, and
/// a step never returns to the immediately previous node unless backtracking
/// is allowed; a walk with no legal continuation stops early.
///
/// `capture`, when non-null, records every walk sequence (including the start
/// node) and forces single-threaded execution.
SparseWeightedMatrix nb_random_walks(const Graph& g, const WalkConfig& config, int threads = 1,
                                     std::vector<std::vector<NodeId>>* capture = nullptr);

/// Hoeffding-style bound on the deviation between empirical and expected
/// 1-hop visit frequency: ceil((L-1)/2)/L * sqrt(log(2/delta) / (2 L M)) with
/// backtracking, numerator ceil((L-1)/3) without.
double walk_error_bound(int length, int trials, double delta, bool backtracking_allowed);

/// W = log(D^-1 (W' o A)): keep counts only where an edge exists, divide each
/// row by the node degree, then take the natural log of the stored entries.
/// Entries never visited stay structural zeros.
SparseWeightedMatrix transform_proximity(const SparseWeightedMatrix& wprime, const Graph& g);

/// Rank-d truncated SVD embedding of W, rows scaled by sqrt of the singular
/// values. Deterministic for a fixed seed; d is reduced (with a flag) when it
/// exceeds the achievable rank.
NodeEmbedding embed(const SparseWeightedMatrix& w, int rank, std::uint64_t seed, int threads = 1);

/// Reweight every edge (i, j) by exp(-||U_i - U_j||_2). The result keeps A's
/// sparsity pattern exactly, is symmetric, and all weights lie in (0, 1].
SparseWeightedMatrix build_emphasis(const Graph& g, const NodeEmbedding& embedding);

/// Walks -> transform -> embed -> reweight. The embedding rank is clipped to
/// n - 1 on small graphs.
SparseWeightedMatrix emphasis_pipeline(const Graph& g, const WalkConfig& config, int threads = 1);

}  // namespace neteffect
