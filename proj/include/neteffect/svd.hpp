#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "neteffect/types.hpp"

namespace neteffect {

struct TruncatedSvd {
    Eigen::MatrixXd u;       // n x k
    Eigen::VectorXd sigma;   // k
    Eigen::MatrixXd v;       // n x k
    bool rank_reduced = false;
};

/// Randomized truncated SVD of a sparse square matrix: Gaussian sketch,
/// subspace iteration, then an exact SVD of the projected matrix. The
/// returned rank is min(rank, achievable rank). Deterministic for a fixed
/// seed; sparse products are row-partitioned across threads.
TruncatedSvd truncated_svd(const SparseWeightedMatrix& w, int rank, std::uint64_t seed,
                           int threads = 1);

}  // namespace neteffect
